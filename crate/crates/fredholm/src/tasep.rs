//! The q -> 0 degeneration: ordinary TASEP with geometric initial data.
//!
//! At q = 0 the q-Laplace transform evaluated at zeta = -(1-q) q^{-m} turns
//! into the sharp probability P(X_N + N >= m), and the Fredholm determinant
//! collapses onto the window n >= 1 - m with the diagonal weight replaced by
//! the indicator.  The kernel functions lose their infinite Pochhammer
//! factors and become rational contour integrands; in the step case they are
//! Charlier polynomials.  The stationary continuation degenerates the same
//! way, giving the distribution of the N-th particle conditioned to start at
//! the origin with rate-alpha first particle and geometric(alpha) gaps.

use std::cell::RefCell;
use std::collections::HashMap;

use qspecial::{Complex64, QError};

use crate::kernel::CachedContour;
use crate::linalg::Lu;

/// TASEP kernel evaluator: rates a_j, geometric initial parameters alpha_j.
pub struct Tasep {
    nn: usize,
    a: Vec<f64>,
    alpha: Vec<f64>,
    t: f64,
    /// balancing radii, max alpha < b < min a < c
    b: f64,
    c: f64,
    phi_cache: RefCell<HashMap<usize, Vec<CachedContour>>>,
    psi_cache: RefCell<HashMap<(usize, i32), CachedContour>>,
}

impl Tasep {
    pub fn new(a: Vec<f64>, alpha: Vec<f64>, t: f64) -> Result<Self, QError> {
        if a.is_empty() || a.len() != alpha.len() {
            return Err(QError::Domain("need matching nonempty a and alpha".into()));
        }
        let max_alpha = alpha.iter().cloned().fold(0.0, f64::max);
        let min_a = a.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(max_alpha >= 0.0 && max_alpha < min_a && t >= 0.0) {
            return Err(QError::Domain(format!(
                "need 0 <= alpha_j < a_k and t >= 0, got alpha max {max_alpha}, a min {min_a}"
            )));
        }
        let b = if max_alpha > 0.0 { (max_alpha * min_a).sqrt() } else { 0.5 * min_a };
        Ok(Tasep {
            nn: a.len(),
            a,
            alpha,
            t,
            b,
            c: 2.0,
            phi_cache: RefCell::new(HashMap::new()),
            psi_cache: RefCell::new(HashMap::new()),
        })
    }

    fn t_eff(&self) -> f64 {
        self.t.max(0.5)
    }

    pub fn tau(&self, n: i64) -> f64 {
        if n >= 0 { self.b.powi(n as i32) } else { self.c.powi(n as i32) }
    }

    /// n-independent integrand factor of phi_l at v (everything except
    /// v^{-(n+N)} and the outer tau(n)).
    fn phi_factor(&self, l: usize, v: Complex64) -> Complex64 {
        let mut g = (-v * self.t).exp() / (v - self.a[l]);
        for j in 0..l {
            g *= (v - self.alpha[j]) / (v - self.a[j]);
        }
        g
    }

    /// n-independent integrand factor of psi_l at z (everything except
    /// z^{n+N} and the outer 1/tau(n)); the measure is dz/(2 pi i z).
    fn psi_factor(&self, l: usize, z: Complex64) -> Complex64 {
        let mut h = (self.a[l] - self.alpha[l]) * (z * self.t).exp() / (z * (z - self.alpha[l]));
        for j in 0..l {
            h *= (z - self.a[j]) / (z - self.alpha[j]);
        }
        h
    }

    /// Distinct pole centers of phi_l with multiplicities.
    fn phi_poles(&self, l: usize) -> Vec<(f64, usize)> {
        let mut poles: Vec<(f64, usize)> = Vec::new();
        for &ai in &self.a[..=l] {
            match poles.iter_mut().find(|(c, _)| (*c - ai).abs() < 1e-9) {
                Some((_, m)) => *m += 1,
                None => poles.push((ai, 1)),
            }
        }
        poles
    }

    fn phi_contours(&self, l: usize) -> Vec<CachedContour> {
        let poles = self.phi_poles(l);
        poles
            .iter()
            .map(|&(center, ord)| {
                let mut d = center; // distance to the origin
                for &(other, _) in &poles {
                    if (other - center).abs() > 1e-12 {
                        d = d.min((other - center).abs());
                    }
                }
                let r = (ord as f64 / self.t_eff()).max(0.02).min(0.4 * d);
                let nodes = 128usize
                    .max((8.0 * r * self.t_eff()) as usize)
                    .max(24 * ord)
                    .min(4096)
                    .next_multiple_of(2);
                CachedContour::build(Complex64::new(center, 0.0), r, nodes, |v| {
                    self.phi_factor(l, v)
                })
            })
            .collect()
    }

    /// Radius band for psi at lattice exponent p = n + N.
    fn psi_band(&self, p: i64) -> (i32, f64) {
        if p >= 0 {
            return (-1, self.b);
        }
        let target = (-(p as f64) / self.t_eff()).max(self.c);
        let band = (target / self.c).log2().ceil().max(0.0) as i32;
        (band, self.c * 2f64.powi(band))
    }

    fn psi_contour(&self, l: usize, radius: f64) -> CachedContour {
        let nodes = 256usize
            .max((8.0 * radius * self.t_eff()) as usize)
            .min(16384)
            .next_multiple_of(2);
        CachedContour::build(Complex64::new(0.0, 0.0), radius, nodes, |z| {
            self.psi_factor(l, z)
        })
    }

    pub fn phi(&self, l: usize, n: i64) -> f64 {
        let mut cache = self.phi_cache.borrow_mut();
        let contours = cache.entry(l).or_insert_with(|| self.phi_contours(l));
        let p = -(n + self.nn as i64);
        let s: Complex64 = contours.iter().map(|c| c.moment(p)).sum();
        self.tau(n) * s.re
    }

    pub fn psi(&self, l: usize, n: i64) -> f64 {
        let p = n + self.nn as i64;
        let (band, radius) = self.psi_band(p);
        let mut cache = self.psi_cache.borrow_mut();
        let contour = cache
            .entry((l, band))
            .or_insert_with(|| self.psi_contour(l, radius));
        contour.moment(p).re / self.tau(n)
    }

    /// det(1 - K) restricted to the window [lo, hi], with ranks l < rank.
    fn det_window(&self, rank: usize, lo: i64, hi: i64) -> f64 {
        let s = (hi - lo + 1) as usize;
        let phis: Vec<Vec<f64>> = (0..rank).map(|l| (lo..=hi).map(|n| self.phi(l, n)).collect()).collect();
        let psis: Vec<Vec<f64>> = (0..rank).map(|l| (lo..=hi).map(|n| self.psi(l, n)).collect()).collect();
        let mut m = vec![Complex64::new(0.0, 0.0); s * s];
        for i in 0..s {
            for j in 0..s {
                let kk: f64 = (0..rank).map(|l| phis[l][j] * psis[l][i]).sum();
                let delta = if i == j { 1.0 } else { 0.0 };
                m[i * s + j] = Complex64::new(delta - kk, 0.0);
            }
        }
        Lu::new(m, s).det().re
    }

    /// P(X_N(t) + N >= m): the hard edge of the window is exact, the upper
    /// edge grows until the determinant stabilizes.
    pub fn survival(&self, m: i64) -> Result<f64, QError> {
        let lo = 1 - m;
        let mut prev: Option<f64> = None;
        for margin in [24i64, 48, 96, 192] {
            let hi = margin.max(lo + margin);
            let d = self.det_window(self.nn, lo, hi);
            if let Some(p) = prev {
                if (d - p).abs() < 1e-10 {
                    return Ok(d);
                }
            }
            prev = Some(d);
        }
        Err(QError::Convergence(format!(
            "TASEP determinant did not stabilize at threshold m = {m}"
        )))
    }
}

/// Stationary TASEP seen from the N-th particle: the first particle is a
/// rate-alpha Poisson walker started at the origin and the gaps are
/// geometric(alpha).  Everything is the q -> 0 limit of the stationary
/// continuation: a rank-(N-1) reduced kernel plus rank-one dressing and
/// scalar series, evaluated at the sharp threshold.
pub struct StationaryTasep {
    nn: usize,
    alpha: f64,
    t: f64,
    /// step kernel (a = 1, alpha = 0) carrying the reduced rank and balancing
    step: Tasep,
    b102: CachedContour,
    b202: CachedContour,
}

impl StationaryTasep {
    pub fn new(nn: usize, alpha: f64, t: f64) -> Result<Self, QError> {
        if !(nn >= 1 && alpha > 0.0 && alpha < 1.0 && t >= 0.0) {
            return Err(QError::Domain(format!(
                "need N >= 1, 0 < alpha < 1, t >= 0, got N={nn}, alpha={alpha}, t={t}"
            )));
        }
        let step = Tasep::new(vec![1.0; nn], vec![0.0; nn], t)?;
        // around the pole at 1 only (alpha and the origin stay outside)
        let b102 = CachedContour::build(
            Complex64::new(1.0, 0.0),
            0.4 * (1.0 - alpha),
            256.max(24 * nn).next_multiple_of(2),
            |v| (-v * t).exp() / ((v - 1.0).powi(nn as i32 - 1) * (v - alpha)),
        );
        // around the origin only (alpha stays outside)
        let b202 = CachedContour::build(
            Complex64::new(0.0, 0.0),
            0.75 * alpha,
            256,
            |z| (z * t).exp() * (z - 1.0).powi(nn as i32 - 1) / (z - alpha),
        );
        Ok(StationaryTasep { nn, alpha, t, step, b102, b202 })
    }

    /// residue piece of B_1 at the continued rate
    pub fn b10_1(&self, n: i64) -> f64 {
        (-self.alpha * self.t).exp()
            / (self.alpha.powi(n as i32 + 1) * (self.alpha - 1.0).powi(self.nn as i32 - 1))
    }

    /// contribution of the pole at 1 to B_1
    pub fn b10_2(&self, n: i64) -> f64 {
        self.b102.moment(-(n + 1)).re
    }

    /// residue piece of B_2 at alpha
    pub fn b20_1(&self, n: i64) -> f64 {
        self.alpha.powi(n as i32)
            * (self.alpha * self.t).exp()
            * (self.alpha - 1.0).powi(self.nn as i32 - 1)
    }

    /// regular part of B_2 (vanishes on n >= 0)
    pub fn b20_2(&self, n: i64) -> f64 {
        if n >= 0 { 0.0 } else { self.b202.moment(n).re }
    }

    fn v0_window(&self, m: i64, margin: i64) -> f64 {
        let lo = 1 - m;
        let hi = margin.max(lo + margin);
        let alpha = self.alpha;
        // scalar series limit: the threshold ladder, the single surviving
        // density term, and the drift
        let mut val = -((m - 1) as f64) / alpha - (self.nn as f64 - 1.0) / (1.0 - alpha)
            + self.t;
        // (1,2) and (2,2) channels live on n < 0 only
        for n in lo..0 {
            val -= (self.b10_1(n) + self.b10_2(n)) * self.b20_2(n);
        }
        // (2,1) channel decays geometrically to the right
        let mut n = lo;
        loop {
            let term = self.b10_2(n) * self.b20_1(n);
            val -= term;
            n += 1;
            if (n >= 0 && term.abs() < 1e-17 * (1.0 + val.abs())) || n > lo + 8192 {
                break;
            }
        }
        if lo > -1 {
            return val; // reduced kernel is empty: det = 1, no dressing
        }
        // reduced-rank block on [lo, -1]; the psi rows vanish for n >= 0
        let rank = self.nn - 1;
        let s = (-lo) as usize;
        let phis: Vec<Vec<f64>> =
            (0..rank).map(|l| (lo..0).map(|k| self.step.phi(l, k)).collect()).collect();
        let psis: Vec<Vec<f64>> =
            (0..rank).map(|l| (lo..0).map(|k| self.step.psi(l, k)).collect()).collect();
        // balanced B vectors over the full window
        let b2w: Vec<f64> = (lo..=hi)
            .map(|k| (self.b20_1(k) + self.b20_2(k)) / self.step.tau(k))
            .collect();
        // u = A B2 on the block, via the rank factorization
        let cl: Vec<f64> = (0..rank)
            .map(|l| (lo..=hi).zip(&b2w).map(|(k, &u)| self.step.phi(l, k) * u).sum())
            .collect();
        let au: Vec<f64> = (0..s)
            .map(|i| (0..rank).map(|l| psis[l][i] * cl[l]).sum())
            .collect();
        let mut mat = vec![Complex64::new(0.0, 0.0); s * s];
        for i in 0..s {
            for j in 0..s {
                let kk: f64 = (0..rank).map(|l| phis[l][j] * psis[l][i]).sum();
                let delta = if i == j { 1.0 } else { 0.0 };
                mat[i * s + j] = Complex64::new(delta - kk, 0.0);
            }
        }
        let lu = Lu::new(mat, s);
        let det = lu.det().re;
        let rhs: Vec<Complex64> = au.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let w = lu.solve(&rhs);
        let dress: f64 = (0..s)
            .map(|i| {
                let k = lo + i as i64;
                w[i].re * (self.b10_1(k) + self.b10_2(k)) * self.step.tau(k)
            })
            .sum();
        det * (val - dress)
    }

    /// The continued determinant value at the sharp threshold.
    pub fn v0(&self, m: i64) -> Result<f64, QError> {
        let mut prev: Option<f64> = None;
        for margin in [24i64, 48, 96, 192] {
            let v = self.v0_window(m, margin);
            if let Some(p) = prev {
                if (v - p).abs() < 1e-9 * v.abs().max(1e-2) {
                    return Ok(v);
                }
            }
            prev = Some(v);
        }
        Err(QError::Convergence(format!(
            "stationary TASEP value did not stabilize at threshold m = {m}"
        )))
    }

    /// P(X_N(t) + N - 1 >= m) for the origin-conditioned stationary chain.
    pub fn survival0(&self, m: i64) -> Result<f64, QError> {
        Ok(self.alpha * (self.v0(m)? - self.v0(m + 1)?))
    }
}
