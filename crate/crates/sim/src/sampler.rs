//! Inverse-CDF sampler for the q-Poisson distribution with a precomputed
//! table.

use qspecial::poisson::q_poisson_pmf;
use qspecial::{QError, QReal};
use rand::Rng;

/// Tabulated inverse-CDF sampler; the table covers all mass above 1e-15.
#[derive(Debug, Clone)]
pub struct QPoissonSampler {
    cdf: Vec<f64>,
}

impl QPoissonSampler {
    pub fn new(alpha: f64, q: QReal) -> Result<Self, QError> {
        let mut cdf = Vec::with_capacity(32);
        let mut acc = 0.0;
        let mut n = 0u32;
        while acc < 1.0 - 1e-15 {
            acc += q_poisson_pmf(n, alpha, q)?;
            cdf.push(acc);
            n += 1;
            if n > 100_000 {
                return Err(QError::Convergence("q-Poisson table too long".into()));
            }
        }
        Ok(QPoissonSampler { cdf })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.gen();
        // tables are short (tens of entries); linear scan beats bisection
        for (n, &c) in self.cdf.iter().enumerate() {
            if u < c {
                return n as u32;
            }
        }
        self.cdf.len() as u32 - 1
    }
}
