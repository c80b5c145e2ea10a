//! Multiplicative Jacobi theta function theta(z) = (z;q)_inf (q/z;q)_inf and
//! its symmetrized variant theta_tilde(z) = theta(z)/sqrt(z).

use crate::qpoch::qpoch_inf;
use crate::{Complex64, QReal};

/// theta(z) = (z;q)_inf (q/z;q)_inf.  Quasi-periodic: theta(qz) = -theta(z)/z.
pub fn theta(z: Complex64, q: QReal) -> Complex64 {
    assert!(z.norm() > 0.0, "theta undefined at z = 0");
    let qv = q.value();
    qpoch_inf(z, q) * qpoch_inf(qv / z, q)
}

/// theta_tilde(z) = theta(z)/sqrt(z) with the principal branch of the square
/// root.  Odd under inversion: theta_tilde(1/z) = -theta_tilde(z) (off the
/// branch cut), which is exactly the [-x] = -[x] property the Cauchy
/// determinant bracket [x] = theta_tilde(q^x) needs.
pub fn theta_tilde(z: Complex64, q: QReal) -> Complex64 {
    theta(z, q) / z.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qr;

    #[test]
    fn theta_vanishes_at_one() {
        assert_eq!(theta(Complex64::new(1.0, 0.0), qr(0.5)).norm(), 0.0);
    }

    #[test]
    fn quasi_periodicity() {
        let q = qr(0.5);
        let z = Complex64::new(0.3, 0.1);
        let lhs = theta(z * 0.5, q);
        let rhs = -theta(z, q) / z;
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn tilde_inversion_antisymmetry() {
        // theta(1/z) = -theta(z)/z (triple product), hence the tilde form is
        // odd under z -> 1/z
        let q = qr(0.3);
        for z in [Complex64::new(2.0, 0.0), Complex64::new(0.7, 0.4)] {
            let d = (theta_tilde(1.0 / z, q) + theta_tilde(z, q)).norm();
            assert!(d < 1e-12, "residual {d:.3e} at z = {z}");
        }
    }
}
