//! Skew and full two-sided q-Whittaker functions by cone enumeration.

use num_complex::Complex64;
use qspecial::qpoch::{inv_qfact, qpoch_n_re};
use qspecial::{QError, QReal};

use crate::Signature;

pub const MAX_ENUM_N: usize = 5;

/// One-variable skew function
///   P_{lambda/mu}(a) = prod a^{lambda_i} * prod a^{-mu_i}
///       (q;q)_{lambda_i - lambda_{i+1}}
///       / [(q;q)_{lambda_i - mu_i} (q;q)_{mu_i - lambda_{i+1}}],
/// which vanishes exactly when lambda/mu violates interlacing (the reciprocal
/// q-factorial convention sends negative indices to zero).
pub fn skew_whittaker_p(lambda: &[i64], mu: &[i64], a: f64, q: QReal) -> f64 {
    skew_whittaker_p_c(lambda, mu, Complex64::new(a, 0.0), q).re
}

pub fn skew_whittaker_p_c(lambda: &[i64], mu: &[i64], a: Complex64, q: QReal) -> Complex64 {
    let n = lambda.len();
    assert_eq!(mu.len() + 1, n, "skew pair must have lengths (n, n-1)");
    let total: i64 = lambda.iter().sum::<i64>() - mu.iter().sum::<i64>();
    let mut v = a.powi(total as i32);
    for i in 0..n - 1 {
        v *= qpoch_n_re(q.value(), q, (lambda[i] - lambda[i + 1]) as u32)
            * inv_qfact(q, lambda[i] - mu[i])
            * inv_qfact(q, mu[i] - lambda[i + 1]);
    }
    v
}

/// Full q-Whittaker function P_lambda(a_1..a_N): sum over the interlaced
/// cone with top row lambda of the product of skew factors.  Exponential in
/// N, hence the small-N guard.
pub fn whittaker_p(lambda: &Signature, a: &[f64], q: QReal) -> Result<f64, QError> {
    let ac: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    whittaker_p_c(lambda, &ac, q).map(|v| v.re)
}

pub fn whittaker_p_c(
    lambda: &Signature,
    a: &[Complex64],
    q: QReal,
) -> Result<Complex64, QError> {
    let n = lambda.len();
    if n != a.len() {
        return Err(QError::Domain("signature and variable counts differ".into()));
    }
    if n > MAX_ENUM_N {
        return Err(QError::Domain(format!(
            "cone enumeration limited to N <= {MAX_ENUM_N}, got {n}"
        )));
    }
    Ok(whittaker_rec(lambda.parts(), a, q))
}

fn whittaker_rec(lambda: &[i64], a: &[Complex64], q: QReal) -> Complex64 {
    let n = lambda.len();
    if n == 1 {
        return a[0].powi(lambda[0] as i32);
    }
    // sum over mu interlacing with lambda: mu_i in [lambda_{i+1}, lambda_i]
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mu = vec![0i64; n - 1];
    enumerate_interlacing(lambda, &mut mu, 0, &mut |mu| {
        sum += skew_whittaker_p_c(lambda, mu, a[n - 1], q)
            * whittaker_rec(mu, &a[..n - 1], q);
    });
    sum
}

fn enumerate_interlacing(
    lambda: &[i64],
    mu: &mut Vec<i64>,
    idx: usize,
    f: &mut impl FnMut(&[i64]),
) {
    if idx == lambda.len() - 1 {
        f(mu);
        return;
    }
    // keep mu weakly decreasing: cap by the previous entry
    let hi = if idx == 0 { lambda[idx] } else { lambda[idx].min(mu[idx - 1]) };
    for v in lambda[idx + 1]..=hi {
        mu[idx] = v;
        enumerate_interlacing(lambda, mu, idx + 1, f);
    }
    // restore ordering guard for siblings
    mu[idx] = lambda[idx + 1];
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use qspecial::qr;

    #[test]
    fn skew_single_box() {
        assert_relative_eq!(skew_whittaker_p(&[1], &[], 0.7, qr(0.5)), 0.7);
        assert_relative_eq!(skew_whittaker_p(&[1, 0], &[0], 0.7, qr(0.5)), 0.7);
    }

    #[test]
    fn skew_vanishes_off_interlacing() {
        assert_eq!(skew_whittaker_p(&[1, 0], &[2], 0.7, qr(0.5)), 0.0);
        assert_eq!(skew_whittaker_p(&[1, 0], &[-1], 0.7, qr(0.5)), 0.0);
    }

    #[test]
    fn skew_shift_covariance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let q = qr(0.45);
        for _ in 0..50 {
            let l2 = rng.gen_range(-4..4);
            let l1 = l2 + rng.gen_range(0..4);
            let m = rng.gen_range(l2..=l1);
            let k = rng.gen_range(-5..5i64);
            let a = 0.7;
            let base = skew_whittaker_p(&[l1, l2], &[m], a, q);
            let shifted = skew_whittaker_p(&[l1 + k, l2 + k], &[m + k], a, q);
            assert!((base - a.powi(-k as i32) * shifted).abs() < 1e-13 * base.abs().max(1.0));
        }
    }

    #[test]
    fn whittaker_single_row() {
        let q = qr(0.5);
        for m in [-3i64, 0, 4] {
            let v = whittaker_p(&Signature::new(vec![m]).unwrap(), &[0.7], q).unwrap();
            assert_relative_eq!(v, 0.7f64.powi(m as i32), epsilon = 1e-14);
        }
    }

    #[test]
    fn whittaker_symmetric_in_variables() {
        let q = qr(0.5);
        let lam = Signature::new(vec![1, 0]).unwrap();
        let v1 = whittaker_p(&lam, &[0.9, 0.4], q).unwrap();
        let v2 = whittaker_p(&lam, &[0.4, 0.9], q).unwrap();
        assert_relative_eq!(v1, v2, epsilon = 1e-13);
        let lam3 = Signature::new(vec![2, 0, -1]).unwrap();
        let v1 = whittaker_p(&lam3, &[0.9, 0.5, 0.3], q).unwrap();
        let v2 = whittaker_p(&lam3, &[0.3, 0.9, 0.5], q).unwrap();
        assert_relative_eq!(v1, v2, epsilon = 1e-13);
    }

    #[test]
    fn whittaker_negation() {
        let q = qr(0.35);
        for parts in [vec![2, -1], vec![1, 0, -2]] {
            let lam = Signature::new(parts.clone()).unwrap();
            let neg =
                Signature::new(parts.iter().rev().map(|x| -x).collect()).unwrap();
            let a = [0.8, 0.5, 0.3];
            let inv: Vec<f64> = a.iter().map(|x| 1.0 / x).collect();
            let v1 = whittaker_p(&lam, &a[..parts.len()], q).unwrap();
            let v2 = whittaker_p(&neg, &inv[..parts.len()], q).unwrap();
            assert_relative_eq!(v1, v2, epsilon = 1e-13);
        }
    }

    #[test]
    fn whittaker_shift_covariance() {
        let q = qr(0.5);
        let lam = Signature::new(vec![1, -1, -2]).unwrap();
        let shifted = Signature::new(vec![4, 2, 1]).unwrap(); // lambda + 3
        let a = [0.9, 0.6, 0.25];
        let v1 = whittaker_p(&lam, &a, q).unwrap();
        let v2 = whittaker_p(&shifted, &a, q).unwrap();
        let scale: f64 = a.iter().map(|x| x.powi(-3)).product();
        assert_relative_eq!(v1, scale * v2, epsilon = 1e-12);
    }

    #[test]
    fn size_guard() {
        let lam = Signature::new(vec![0; 6]).unwrap();
        assert!(whittaker_p(&lam, &[0.5; 6], qr(0.5)).is_err());
    }

    #[test]
    fn branching_recurrence() {
        // sum_l (1-q^{lam_{l-1}-lam_l}) P_{(lam+1_l)/mu}(a)
        //   = a P_{lam/mu}(a) + sum_l (1-q^{mu_{l-1}-mu_l+1}) P_{lam/(mu-1_l)}(a)
        // with the convention lam_0 = mu_0 = +infty.
        let q = qr(0.5);
        let qv = 0.5f64;
        let a = 0.7;
        let cases: Vec<(Vec<i64>, Vec<i64>)> = vec![
            (vec![2, 0, -1], vec![1, 0]),
            (vec![1, 1, -2], vec![1, -1]),
            (vec![3, 0], vec![1]),
        ];
        for (lam, mu) in cases {
            let k = lam.len();
            let mut lhs = 0.0;
            for l in 0..k {
                let coeff = if l == 0 {
                    1.0
                } else {
                    1.0 - qv.powi((lam[l - 1] - lam[l]) as i32)
                };
                if coeff == 0.0 {
                    continue;
                }
                let mut lp = lam.clone();
                lp[l] += 1;
                lhs += coeff * skew_whittaker_p(&lp, &mu, a, q);
            }
            let mut rhs = a * skew_whittaker_p(&lam, &mu, a, q);
            for l in 0..k - 1 {
                let coeff = if l == 0 {
                    1.0
                } else {
                    1.0 - qv.powi((mu[l - 1] - mu[l] + 1) as i32)
                };
                if coeff == 0.0 {
                    continue;
                }
                let mut mm = mu.clone();
                mm[l] -= 1;
                rhs += coeff * skew_whittaker_p(&lam, &mm, a, q);
            }
            assert!(
                (lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0),
                "lam={lam:?} mu={mu:?}: {lhs} vs {rhs}"
            );
        }
    }
}
