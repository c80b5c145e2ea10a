//! Dense complex LU decomposition with partial pivoting: determinant and
//! linear solves for the windowed operators.

use qspecial::Complex64;

/// LU factorization of a dense complex matrix (row-major).
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    piv: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn new(mut m: Vec<Complex64>, n: usize) -> Self {
        assert_eq!(m.len(), n * n);
        let mut piv = Vec::with_capacity(n);
        let mut sign = 1.0;
        for k in 0..n {
            let mut p = k;
            for r in (k + 1)..n {
                if m[r * n + k].norm_sqr() > m[p * n + k].norm_sqr() {
                    p = r;
                }
            }
            piv.push(p);
            if p != k {
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            let d = m[k * n + k];
            if d.norm_sqr() == 0.0 {
                continue; // singular: determinant will be 0, solves unsupported
            }
            for r in (k + 1)..n {
                let factor = m[r * n + k] / d;
                m[r * n + k] = factor;
                for j in (k + 1)..n {
                    let v = m[k * n + j];
                    m[r * n + j] -= factor * v;
                }
            }
        }
        Lu { n, lu: m, piv, sign }
    }

    pub fn det(&self) -> Complex64 {
        let mut d = Complex64::new(self.sign, 0.0);
        for k in 0..self.n {
            d *= self.lu[k * self.n + k];
        }
        d
    }

    /// Solve A x = rhs for the factored matrix A.
    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        assert_eq!(rhs.len(), n);
        let mut x = rhs.to_vec();
        // the stored factors describe P A = L U, so permute first and then
        // run the two clean triangular sweeps
        for k in 0..n {
            x.swap(k, self.piv[k]);
        }
        for k in 0..n {
            for j in 0..k {
                let v = x[j];
                x[k] -= self.lu[k * n + j] * v;
            }
        }
        for k in (0..n).rev() {
            for j in (k + 1)..n {
                let v = x[j];
                x[k] -= self.lu[k * n + j] * v;
            }
            x[k] /= self.lu[k * n + k];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn det_and_solve_2x2() {
        let m = vec![c(2.0, 0.0), c(1.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)];
        let lu = Lu::new(m, 2);
        // det = 2*3 - (1+i)(-i) = 6 - (1 - i) ... = 6 - (-i + 1) = 5 + i
        let d = lu.det();
        assert_relative_eq!(d.re, 5.0, epsilon = 1e-14);
        assert_relative_eq!(d.im, 1.0, epsilon = 1e-14);
        let x = lu.solve(&[c(1.0, 0.0), c(0.0, 0.0)]);
        // check residual A x = rhs
        let r0 = c(2.0, 0.0) * x[0] + c(1.0, 1.0) * x[1];
        let r1 = c(0.0, -1.0) * x[0] + c(3.0, 0.0) * x[1];
        assert_relative_eq!(r0.re, 1.0, epsilon = 1e-13);
        assert!(r0.im.abs() + r1.norm() < 1e-13);
    }

    #[test]
    fn random_solve_residual() {
        let n = 17;
        // deterministic pseudo-random fill
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let m: Vec<Complex64> = (0..n * n).map(|_| c(next(), next())).collect();
        let rhs: Vec<Complex64> = (0..n).map(|_| c(next(), next())).collect();
        let lu = Lu::new(m.clone(), n);
        let x = lu.solve(&rhs);
        for i in 0..n {
            let mut r = -rhs[i];
            for j in 0..n {
                r += m[i * n + j] * x[j];
            }
            assert!(r.norm() < 1e-11, "row {i} residual {}", r.norm());
        }
    }

    #[test]
    fn singular_matrix_has_zero_det() {
        let m = vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)];
        assert_eq!(Lu::new(m, 2).det().norm(), 0.0);
    }
}
