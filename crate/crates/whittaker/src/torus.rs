//! Torus-integral representations: the dual function Q_lambda, the two-sided
//! probability measure on signatures, and the bottom-row marginal, all via
//! tensor trapezoid quadrature on circles (spectrally accurate for the
//! analytic integrands at hand).

use num_complex::Complex64;
use qspecial::params::QParams;
use qspecial::qpoch::{qpoch_inf, qpoch_inf_re};
use qspecial::{QError, QReal};

use crate::functions::whittaker_p_c;
use crate::Signature;

/// (1/2 pi i)^n \oint ... \oint prod dz_j/z_j f(z) over the n-torus of the
/// given radius: a plain tensor trapezoid average over m^n nodes.
pub fn torus_integral<F: FnMut(&[Complex64]) -> Complex64>(
    n: usize,
    radius: f64,
    m: usize,
    mut f: F,
) -> Complex64 {
    let nodes: Vec<Complex64> = (0..m)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            radius * Complex64::new(0.0, th).exp()
        })
        .collect();
    let mut idx = vec![0usize; n];
    let mut z = vec![nodes[0]; n];
    let mut sum = Complex64::new(0.0, 0.0);
    loop {
        sum += f(&z);
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < m {
                z[d] = nodes[idx[d]];
                break;
            }
            idx[d] = 0;
            z[d] = nodes[0];
            d += 1;
            if d == n {
                return sum / (m as f64).powi(n as i32);
            }
        }
    }
}

/// Orthogonality weight (without the contour normalization):
/// (1/N!) prod_{i<j} (z_i/z_j;q)_inf (z_j/z_i;q)_inf.
pub fn sklyanin_weight(z: &[Complex64], q: QReal) -> Complex64 {
    let n = z.len();
    let mut w = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            w *= qpoch_inf(z[i] / z[j], q) * qpoch_inf(z[j] / z[i], q);
        }
    }
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    w / fact
}

/// Specialization kernel Pi(z; alpha, t) = prod_j e^{z_j t} / prod_{i,j}
/// (alpha_i/z_j;q)_inf.
pub fn pi_product_c(z: &[Complex64], alpha: &[f64], t: f64, q: QReal) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for &zj in z {
        v *= (zj * t).exp();
        for &al in alpha {
            v /= qpoch_inf(al / zj, q);
        }
    }
    v
}

/// Real-argument Pi(a; alpha, t).
pub fn pi_product(a: &[f64], alpha: &[f64], t: f64, q: QReal) -> f64 {
    let mut v = 1.0;
    for &aj in a {
        v *= (aj * t).exp();
        for &al in alpha {
            v /= qpoch_inf_re(al / aj, q);
        }
    }
    v
}

/// Q_lambda(alpha; t) on a fixed grid resolution:
/// prod_{i<N} (q^{lambda_i - lambda_{i+1} + 1};q)_inf times the torus
/// integral of P_lambda(1/z) Pi(z; alpha, t) against the orthogonality
/// weight.  Valid for max alpha_i < 1 (poles alpha_i q^m stay inside the
/// unit torus).
pub fn whittaker_q_with_grid(
    lambda: &Signature,
    alpha: &[f64],
    t: f64,
    q: QReal,
    m: usize,
) -> Result<f64, QError> {
    let n = lambda.len();
    if n != alpha.len() {
        return Err(QError::Domain("signature and alpha counts differ".into()));
    }
    if alpha.iter().any(|&x| x >= 1.0) {
        return Err(QError::Domain("unit-torus representation needs alpha < 1".into()));
    }
    let qv = q.value();
    let mut pref = 1.0;
    for i in 0..n - 1 {
        let gap = (lambda.parts()[i] - lambda.parts()[i + 1]) as i32;
        pref *= qpoch_inf_re(qv.powi(gap + 1), q);
    }
    let mut inv = vec![Complex64::new(0.0, 0.0); n];
    let val = torus_integral(n, 1.0, m, |z| {
        for (v, &zj) in inv.iter_mut().zip(z) {
            *v = 1.0 / zj;
        }
        whittaker_p_c(lambda, &inv, q).unwrap()
            * pi_product_c(z, alpha, t, q)
            * sklyanin_weight(z, q)
    });
    Ok(pref * val.re)
}

/// Q_lambda(alpha; t) with automatic grid refinement: double the per-axis
/// node count until two successive values agree to 1e-9.
pub fn whittaker_q(
    lambda: &Signature,
    alpha: &[f64],
    t: f64,
    q: QReal,
) -> Result<f64, QError> {
    let mut m = 32;
    let mut prev = whittaker_q_with_grid(lambda, alpha, t, q, m)?;
    while m <= 512 {
        m *= 2;
        let next = whittaker_q_with_grid(lambda, alpha, t, q, m)?;
        if (next - prev).abs() < 1e-9 * next.abs().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(QError::Convergence(format!(
        "torus quadrature not converged at {m} nodes per axis"
    )))
}

/// Probability of the bottom signature:
/// P_lambda(a) Q_lambda(alpha; t) / Pi(a; alpha, t).
pub fn two_sided_measure(lambda: &Signature, p: &QParams) -> Result<f64, QError> {
    let num = crate::functions::whittaker_p(lambda, &p.a, p.q)?
        * whittaker_q(lambda, &p.alpha, p.t, p.q)?;
    Ok(num / pi_product(&p.a, &p.alpha, p.t, p.q))
}

/// Marginal law of the last entry of the bottom signature, as a single
/// N-fold contour integral:
///   P[lambda_N = l] = (q;q)_inf^{N-1} \oint prod dz_j/(2 pi i z_j)
///       (A/Z)^l (A/Z;q)_inf / prod_{i,j}(a_i/z_j;q)_inf
///       * weight(z) Pi(z)/Pi(a),
/// with A = prod a_i, Z = prod z_j.  The contour radius 1.25 * max a_i keeps
/// the poles a_i q^m strictly inside even when some a_i = 1.
pub fn marginal_bottom(l: i64, p: &QParams) -> Result<f64, QError> {
    let n = p.n();
    let q = p.q;
    let radius = 1.25 * p.a.iter().cloned().fold(0.0, f64::max);
    let a_prod: f64 = p.a.iter().product();
    let pi_a = pi_product(&p.a, &p.alpha, p.t, q);
    let qq = qpoch_inf_re(q.value(), q).powi(n as i32 - 1);
    let mut m = 64;
    let eval = |m: usize| {
        torus_integral(n, radius, m, |z| {
            let z_prod: Complex64 = z.iter().product();
            let r = a_prod / z_prod;
            let mut v = r.powi(l as i32) * qpoch_inf(r, q);
            for &zj in z {
                for &ai in &p.a {
                    v /= qpoch_inf(ai / zj, q);
                }
            }
            v * sklyanin_weight(z, q) * pi_product_c(z, &p.alpha, p.t, q)
        })
    };
    let mut prev = eval(m);
    while m <= 1024 {
        m *= 2;
        let next = eval(m);
        if (next - prev).norm() < 1e-9 * next.norm().max(1.0) {
            return Ok(qq * next.re / pi_a);
        }
        prev = next;
    }
    Err(QError::Convergence(format!(
        "marginal quadrature not converged at {m} nodes per axis"
    )))
}
