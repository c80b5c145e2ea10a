//! The q-Poisson distribution: pmf (alpha;q)_inf alpha^n/(q;q)_n.

use crate::qpoch::{qpoch_inf_re, qpoch_n_re};
use crate::{QError, QReal};

/// pmf at n for parameter alpha in [0,1).
pub fn q_poisson_pmf(n: u32, alpha: f64, q: QReal) -> Result<f64, QError> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(QError::Domain(format!(
            "q-Poisson parameter must lie in [0,1), got {alpha}"
        )));
    }
    Ok(qpoch_inf_re(alpha, q) * alpha.powi(n as i32) / qpoch_n_re(q.value(), q, n))
}

/// CDF at n (sum of the pmf up to and including n).
pub fn q_poisson_cdf(n: u32, alpha: f64, q: QReal) -> Result<f64, QError> {
    let mut acc = 0.0;
    for k in 0..=n {
        acc += q_poisson_pmf(k, alpha, q)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qr;
    use approx::assert_relative_eq;

    #[test]
    fn pmf_at_zero() {
        let v = q_poisson_pmf(0, 0.4, qr(0.5)).unwrap();
        assert_relative_eq!(v, qpoch_inf_re(0.4, qr(0.5)), epsilon = 1e-15);
    }

    #[test]
    fn normalization() {
        let mut s = 0.0;
        for n in 0..=200 {
            s += q_poisson_pmf(n, 0.4, qr(0.5)).unwrap();
        }
        assert_relative_eq!(s, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn small_q_geometric_limit() {
        let q = qr(1e-12);
        for n in 0..6u32 {
            let v = q_poisson_pmf(n, 0.3, q).unwrap();
            let geo = (1.0 - 0.3) * 0.3f64.powi(n as i32);
            assert!((v - geo).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_alpha_at_one() {
        assert!(q_poisson_pmf(3, 1.0, qr(0.5)).is_err());
    }
}
