//! Numeric validators for the two key summation identities: the bilateral
//! q-series summation and the theta-function Cauchy determinant.

use crate::qpoch::qpoch_inf;
use crate::theta::theta_tilde;
use crate::{Complex64, QError, QReal};

/// Relative residual of the bilateral summation
///   sum_{n in Z} (b q^n;q)_inf/(a q^n;q)_inf z^n
///     = (az)_inf (q/az)_inf (q)_inf (b/a)_inf
///       / [ (a)_inf (q/a)_inf (z)_inf (b/az)_inf ]
/// valid on the strip |b/a| < |z| < 1.
pub fn verify_ramanujan(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    q: QReal,
    n_terms: usize,
) -> Result<f64, QError> {
    let az = z.norm();
    if az >= 1.0 || a.norm() == 0.0 || b.norm() / a.norm() >= az {
        return Err(QError::Domain(format!(
            "outside convergence strip |b/a| < |z| < 1: |b/a|={}, |z|={}",
            b.norm() / a.norm().max(1e-300),
            az
        )));
    }
    let qv = q.value();
    // evaluate the product ratio factorwise so the two infinite products
    // never overflow individually at large negative n
    let term = |n: i64| -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut ratio = z.powi(n as i32);
        let mut j = n;
        loop {
            let qj = qv.powi(j as i32);
            if (a.norm().max(b.norm())) * qj < 1e-17 {
                break;
            }
            ratio *= (one - b * qj) / (one - a * qj);
            j += 1;
        }
        ratio
    };
    let mut sum = term(0);
    // both tails are geometric inside the strip; stop after 5 consecutive
    // negligible terms on each side
    for dir in [1i64, -1] {
        let mut quiet = 0;
        for k in 1..=n_terms as i64 {
            let t = term(dir * k);
            sum += t;
            if t.norm() < 1e-17 * sum.norm() {
                quiet += 1;
                if quiet >= 5 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }
    let rhs = qpoch_inf(a * z, q) * qpoch_inf(qv / (a * z), q) * qpoch_inf(Complex64::from(qv), q)
        * qpoch_inf(b / a, q)
        / (qpoch_inf(a, q)
            * qpoch_inf(qv / a, q)
            * qpoch_inf(z, q)
            * qpoch_inf(b / (a * z), q));
    Ok((sum - rhs).norm() / rhs.norm())
}

/// Relative residual of the Cauchy determinant identity for the bracket
/// [x] = theta_tilde(q^x):
///   [nu+B-C] prod_{i<j}[b_i-b_j][c_j-c_i] / ([nu] prod_{i,j}[b_i-c_j])
///     = det( [nu+b_i-c_j] / ([nu][b_i-c_j]) ).
pub fn verify_theta_cauchy(
    nu: Complex64,
    b: &[Complex64],
    c: &[Complex64],
    q: QReal,
) -> Result<f64, QError> {
    let n = b.len();
    assert_eq!(n, c.len());
    let lq = q.value().ln();
    let bracket = |x: Complex64| -> Complex64 { theta_tilde((x * lq).exp(), q) };

    for bi in b {
        for cj in c {
            if bracket(bi - cj).norm() < 1e-12 {
                return Err(QError::Singular(format!(
                    "[b_i - c_j] underflows at b={bi}, c={cj}"
                )));
            }
        }
    }

    let bsum: Complex64 = b.iter().sum();
    let csum: Complex64 = c.iter().sum();
    let mut lhs = bracket(nu + bsum - csum) / bracket(nu);
    for i in 0..n {
        for j in (i + 1)..n {
            lhs *= bracket(b[i] - b[j]) * bracket(c[j] - c[i]);
        }
    }
    for bi in b {
        for cj in c {
            lhs /= bracket(bi - cj);
        }
    }

    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = bracket(nu + b[i] - c[j]) / (bracket(nu) * bracket(b[i] - c[j]));
        }
    }
    let rhs = det_complex(&mut m, n);
    Ok((lhs - rhs).norm() / rhs.norm().max(1e-300))
}

/// Determinant of a small dense complex matrix by partial-pivot elimination.
pub fn det_complex(m: &mut [Complex64], n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let mut piv = k;
        for r in (k + 1)..n {
            if m[r * n + k].norm() > m[piv * n + k].norm() {
                piv = r;
            }
        }
        if m[piv * n + k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        det *= m[k * n + k];
        for r in (k + 1)..n {
            let factor = m[r * n + k] / m[k * n + k];
            for j in k..n {
                let v = m[k * n + j];
                m[r * n + j] -= factor * v;
            }
        }
    }
    det
}
