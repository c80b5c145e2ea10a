//! Exact small-N oracles for two-sided q-Whittaker functions, the associated
//! probability measure on signatures, and the interlaced-array dynamics:
//! brute-force cone enumeration plus tensor-trapezoid torus quadrature.
//!
//! This layer trades efficiency for exactness; it exists to cross-check the
//! determinant and simulation layers at small N.

pub mod dynamics;
pub mod functions;
pub mod torus;

use qspecial::QError;

/// A weakly decreasing integer tuple (two-sided partition).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature(Vec<i64>);

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self, QError> {
        if parts.is_empty() {
            return Err(QError::Domain("signature must have length >= 1".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(QError::Domain(format!("not weakly decreasing: {parts:?}")));
        }
        Ok(Signature(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Triangular array of interlaced signatures; row k (1-based) has k entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTPattern {
    rows: Vec<Vec<i64>>,
}

impl GTPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, QError> {
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(QError::Domain(format!(
                    "row {} must have {} entries, got {}",
                    k + 1,
                    k + 1,
                    row.len()
                )));
            }
        }
        let p = GTPattern { rows };
        if !p.interlaced() {
            return Err(QError::Domain("interlacing violated".into()));
        }
        Ok(p)
    }

    /// All-zero pattern of depth n.
    pub fn zero(n: usize) -> Self {
        GTPattern { rows: (1..=n).map(|k| vec![0i64; k]).collect() }
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    /// Entry lambda^{(k)}_j, both indices 1-based.
    pub fn entry(&self, j: usize, k: usize) -> i64 {
        self.rows[k - 1][j - 1]
    }

    pub fn set_entry(&mut self, j: usize, k: usize, v: i64) {
        self.rows[k - 1][j - 1] = v;
    }

    pub fn row(&self, k: usize) -> &[i64] {
        &self.rows[k - 1]
    }

    /// lambda^{(m+1)}_{l+1} <= lambda^{(m)}_l <= lambda^{(m+1)}_l everywhere.
    pub fn interlaced(&self) -> bool {
        for m in 0..self.rows.len().saturating_sub(1) {
            for l in 0..=m {
                if !(self.rows[m + 1][l + 1] <= self.rows[m][l]
                    && self.rows[m][l] <= self.rows[m + 1][l])
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Tensor trapezoid rule resolution for torus integrals.
#[derive(Debug, Clone, Copy)]
pub struct TorusGrid {
    pub nodes_per_dim: usize,
}

impl TorusGrid {
    pub fn new(m: usize) -> Result<Self, QError> {
        if m < 16 {
            return Err(QError::Domain(format!("grid needs >= 16 nodes per dim, got {m}")));
        }
        Ok(TorusGrid { nodes_per_dim: m })
    }
}

impl Default for TorusGrid {
    fn default() -> Self {
        TorusGrid { nodes_per_dim: 32 }
    }
}
