//! q-series special functions: q-Pochhammer symbols, Jacobi theta functions,
//! q-Gamma/q-digamma, the Airy function, Charlier polynomials, the q-Poisson
//! distribution, and numeric validators for the bilateral-sum and theta
//! Cauchy-determinant identities.
//!
//! Everything here is pure f64/Complex64 numerics with certified geometric
//! truncation; no external special-function dependencies.

pub mod airy;
pub mod charlier;
pub mod gamma;
pub mod params;
pub mod poisson;
pub mod qpoch;
pub mod quad;
pub mod theta;
pub mod verify;

pub use num_complex::Complex64;

/// Deformation parameter restricted to the open interval (0,1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QReal(f64);

impl QReal {
    pub fn new(q: f64) -> Result<Self, QError> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(QReal(q))
        } else {
            Err(QError::Domain(format!("q must lie in (0,1), got {q}")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<QReal> for f64 {
    fn from(q: QReal) -> f64 {
        q.0
    }
}

/// Shorthand constructor for literal parameters; panics outside (0,1).
pub fn qr(q: f64) -> QReal {
    QReal::new(q).expect("q outside (0,1)")
}

#[derive(Debug, thiserror::Error)]
pub enum QError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole encountered: {0}")]
    Pole(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("singular configuration: {0}")]
    Singular(String),
}
