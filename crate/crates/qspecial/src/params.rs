//! Shared model-parameter bundle used by the measure, simulation and
//! determinant layers.

use crate::{QError, QReal};

/// Parameters of the N-particle model: deformation q, per-particle rates a,
/// specialization parameters alpha, and the time horizon t.
#[derive(Debug, Clone)]
pub struct QParams {
    pub q: QReal,
    pub a: Vec<f64>,
    pub alpha: Vec<f64>,
    pub t: f64,
}

impl QParams {
    pub fn new(q: QReal, a: Vec<f64>, alpha: Vec<f64>, t: f64) -> Result<Self, QError> {
        if a.is_empty() || a.len() != alpha.len() {
            return Err(QError::Domain(
                "a and alpha must be nonempty and of equal length".into(),
            ));
        }
        if !a.iter().all(|&x| 0.0 < x && x <= 1.0) {
            return Err(QError::Domain(format!("rates a must lie in (0,1], got {a:?}")));
        }
        if !alpha.iter().all(|&x| (0.0..1.0).contains(&x)) {
            return Err(QError::Domain(format!(
                "specializations alpha must lie in [0,1), got {alpha:?}"
            )));
        }
        if t < 0.0 {
            return Err(QError::Domain(format!("time must be >= 0, got {t}")));
        }
        Ok(QParams { q, a, alpha, t })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// max alpha_i < min a_j, the validity condition of the generic
    /// determinant formula.
    pub fn is_generic(&self) -> bool {
        let max_alpha = self.alpha.iter().cloned().fold(0.0, f64::max);
        let min_a = self.a.iter().cloned().fold(f64::INFINITY, f64::min);
        max_alpha < min_a
    }
}
