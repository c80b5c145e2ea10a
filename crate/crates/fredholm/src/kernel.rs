//! Biorthogonal contour-integral kernel for the exact q-Laplace transform of
//! the N-th particle position.
//!
//! The transform < 1/(zeta q^{X_N + N}; q)_inf > equals the determinant
//! det(1 - f K) on l^2(Z), where f(n) = 1/(1 - q^n/zeta) acts diagonally and
//! K(n,m) = sum_{l=0}^{N-1} phi_l(m) psi_l(n) is built from two families of
//! contour integrals.  Both families carry the balancing weight
//! tau(n) = b^n (n >= 0), c^n (n < 0) with max alpha < b < min a <= 1 < c,
//! which makes every row and column square-summable.

use std::cell::RefCell;
use std::collections::HashMap;

use qspecial::params::QParams;
use qspecial::qpoch::qpoch_inf;
#[cfg(test)]
use qspecial::qpoch::ln_qpoch_inf_neg_exp;
use qspecial::{Complex64, QError};

use crate::linalg::Lu;

/// Quadrature nodes of one circular contour together with the cached,
/// n-independent part of the integrand (already multiplied by the trapezoid
/// weight dz/(2 pi i) -> r e^{i theta}/M).
pub(crate) struct CachedContour {
    z: Vec<Complex64>,
    g: Vec<Complex64>,
}

impl CachedContour {
    pub(crate) fn build<F: Fn(Complex64) -> Complex64>(
        center: Complex64,
        radius: f64,
        nodes: usize,
        f: F,
    ) -> Self {
        let mut z = Vec::with_capacity(nodes);
        let mut g = Vec::with_capacity(nodes);
        for k in 0..nodes {
            let th = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
            let e = Complex64::new(0.0, th).exp();
            let zk = center + radius * e;
            z.push(zk);
            g.push(f(zk) * e * (radius / nodes as f64));
        }
        CachedContour { z, g }
    }

    /// Sum of g_k * z_k^p over the nodes.
    pub(crate) fn moment(&self, p: i64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (zk, gk) in self.z.iter().zip(&self.g) {
            s += gk * zk.powi(p as i32);
        }
        s
    }
}

/// Exact kernel evaluator for one parameter set.  Caches the n-independent
/// integrand factors per contour so that sweeps over the lattice index are
/// cheap.
pub struct Kernel {
    pub p: QParams,
    /// inner balancing radius, max alpha < b < min a
    pub b: f64,
    /// outer balancing radius, c > 1
    pub c: f64,
    phi_cache: RefCell<HashMap<usize, Vec<CachedContour>>>,
    psi_cache: RefCell<HashMap<(usize, i32), CachedContour>>,
}

impl Kernel {
    /// Build a kernel with default balancing radii.
    pub fn new(p: QParams) -> Result<Self, QError> {
        let max_alpha = p.alpha.iter().cloned().fold(0.0, f64::max);
        let min_a = p.a.iter().cloned().fold(f64::INFINITY, f64::min);
        let b = if max_alpha > 0.0 { (max_alpha * min_a).sqrt() } else { 0.5 * min_a };
        Self::with_radii(p, b, 2.0)
    }

    /// Build a kernel with explicit balancing radii; the determinant and all
    /// biorthogonality relations are invariant under admissible (b, c).
    pub fn with_radii(p: QParams, b: f64, c: f64) -> Result<Self, QError> {
        if !p.is_generic() {
            return Err(QError::Domain(
                "kernel requires max alpha < min a; use the stationary continuation at a = alpha"
                    .into(),
            ));
        }
        let max_alpha = p.alpha.iter().cloned().fold(0.0, f64::max);
        let min_a = p.a.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(max_alpha < b && b < min_a && c > 1.0) {
            return Err(QError::Domain(format!(
                "balancing radii need max alpha < b < min a and c > 1, got b={b}, c={c}"
            )));
        }
        // a denominator ladder point a_k q^{-1-j} landing exactly on a pole
        // a_i pinches the phi contour; the correct value is the limit over
        // nearby rates, which a fixed circle cannot represent
        let qv = p.q.value();
        let max_a = p.a.iter().cloned().fold(0.0, f64::max);
        for &ak in &p.a {
            let mut v = ak / qv;
            while v < max_a + 1e-6 {
                if p.a.iter().any(|&ai| (v - ai).abs() < 1e-9) {
                    return Err(QError::Domain(format!(
                        "rate ladder point {v} collides with a pole; perturb the rates \
                         and extrapolate"
                    )));
                }
                v /= qv;
            }
        }
        Ok(Kernel {
            p,
            b,
            c,
            phi_cache: RefCell::new(HashMap::new()),
            psi_cache: RefCell::new(HashMap::new()),
        })
    }

    fn t_eff(&self) -> f64 {
        self.p.t.max(0.5)
    }

    /// Balancing weight tau(n).
    pub fn tau(&self, n: i64) -> f64 {
        if n >= 0 { self.b.powi(n as i32) } else { self.c.powi(n as i32) }
    }

    /// n-independent integrand factor of phi_l at v (everything except
    /// v^{-(n+N)} and the outer tau(n)).
    fn phi_factor(&self, l: usize, v: Complex64) -> Complex64 {
        let q = self.p.q;
        let qv = q.value();
        let mut g = (-v * self.p.t).exp() / (v - self.p.a[l]);
        for j in 0..l {
            g *= (v - self.p.alpha[j]) / (v - self.p.a[j]);
        }
        for k in 0..self.p.n() {
            g *= qpoch_inf(qv * self.p.alpha[k] / v, q) / qpoch_inf(qv * v / self.p.a[k], q);
        }
        g
    }

    /// n-independent integrand factor of psi_l at z (everything except
    /// z^{n+N} and the outer 1/tau(n)); includes the (a_{l+1} - alpha_{l+1})
    /// prefactor.
    fn psi_factor(&self, l: usize, z: Complex64) -> Complex64 {
        let q = self.p.q;
        let qv = q.value();
        // the measure is dz/(2 pi i z): biorthonormality fixes the extra 1/z
        let mut h =
            (self.p.a[l] - self.p.alpha[l]) * (z * self.p.t).exp() / (z * (z - self.p.alpha[l]));
        for j in 0..l {
            h *= (z - self.p.a[j]) / (z - self.p.alpha[j]);
        }
        for k in 0..self.p.n() {
            h *= qpoch_inf(qv * z / self.p.a[k], q) / qpoch_inf(qv * self.p.alpha[k] / z, q);
        }
        h
    }

    /// Distinct pole centers of phi_l (the rates a_1..a_{l+1}) with their
    /// multiplicities.
    fn phi_poles(&self, l: usize) -> Vec<(f64, usize)> {
        let mut poles: Vec<(f64, usize)> = Vec::new();
        for &ai in &self.p.a[..=l] {
            match poles.iter_mut().find(|(c, _)| (*c - ai).abs() < 1e-9) {
                Some((_, m)) => *m += 1,
                None => poles.push((ai, 1)),
            }
        }
        poles
    }

    /// Contours for phi_l: one small circle around each distinct pole, with
    /// radius kept away from the origin, the other poles, and the
    /// denominator zeros at a_k q^{-1-j}.
    fn phi_contours(&self, l: usize) -> Vec<CachedContour> {
        let poles = self.phi_poles(l);
        let qv = self.p.q.value();
        poles
            .iter()
            .map(|&(center, ord)| {
                let mut d = center; // distance to the origin
                for &(other, _) in &poles {
                    if (other - center).abs() > 1e-12 {
                        d = d.min((other - center).abs());
                    }
                }
                for &ak in &self.p.a {
                    let mut v = ak / qv;
                    while v < center + d {
                        d = d.min((v - center).abs());
                        v /= qv;
                    }
                    d = d.min((v - center).abs());
                }
                // radius near ord/t balances the e^{-vt} growth on the circle
                // against the pole order (minimal cancellation)
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

    /// Radius band for psi at lattice exponent p = n + N: the fixed inner
    /// radius b for p >= 0, and a saddle-scaled dyadic radius >= c for p < 0.
    fn psi_band(&self, p: i64) -> (i32, f64) {
        if p >= 0 {
            return (-1, self.b);
        }
        let target = (-(p as f64) / self.t_eff()).max(self.c);
        let band = (target / self.c).log2().ceil().max(0.0) as i32;
        (band, self.c * 2f64.powi(band))
    }

    fn psi_contour(&self, l: usize, band: i32, radius: f64) -> CachedContour {
        let nodes = 256usize
            .max((8.0 * radius * self.t_eff()) as usize)
            .min(16384)
            .next_multiple_of(2);
        let _ = band;
        CachedContour::build(Complex64::new(0.0, 0.0), radius, nodes, |z| {
            self.psi_factor(l, z)
        })
    }

    /// phi_l(n), the first biorthogonal family.
    pub fn phi(&self, l: usize, n: i64) -> f64 {
        let mut cache = self.phi_cache.borrow_mut();
        let contours = cache.entry(l).or_insert_with(|| self.phi_contours(l));
        let p = -(n + self.p.n() as i64);
        let s: Complex64 = contours.iter().map(|c| c.moment(p)).sum();
        self.tau(n) * s.re
    }

    /// psi_l(n), the second biorthogonal family.
    pub fn psi(&self, l: usize, n: i64) -> f64 {
        let p = n + self.p.n() as i64;
        let (band, radius) = self.psi_band(p);
        let mut cache = self.psi_cache.borrow_mut();
        let contour = cache
            .entry((l, band))
            .or_insert_with(|| self.psi_contour(l, band, radius));
        contour.moment(p).re / self.tau(n)
    }

    /// phi_l over an inclusive lattice window, sharing the cached contours.
    pub fn phi_row(&self, l: usize, lo: i64, hi: i64) -> Vec<f64> {
        (lo..=hi).map(|n| self.phi(l, n)).collect()
    }

    /// psi_l over an inclusive lattice window.
    pub fn psi_row(&self, l: usize, lo: i64, hi: i64) -> Vec<f64> {
        (lo..=hi).map(|n| self.psi(l, n)).collect()
    }
}

/// Diagonal multiplier f(n) = 1/(1 - q^n / zeta).
pub fn f_weight(n: i64, zeta: Complex64, q: f64) -> Complex64 {
    let lg = n as f64 * q.ln() - zeta.norm().ln();
    if lg > 600.0 {
        // q^n/zeta is astronomically large: f(n) ~ -zeta q^{-n} ~ 0
        return Complex64::new(0.0, 0.0);
    }
    let qn = q.powi(n as i32);
    Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - qn / zeta)
}

/// det(1 - f K) restricted to the window n, m in [lo, hi].
pub fn fredholm_det_window(k: &Kernel, zeta: Complex64, lo: i64, hi: i64) -> Complex64 {
    let np = k.p.n();
    let s = (hi - lo + 1) as usize;
    let phis: Vec<Vec<f64>> = (0..np).map(|l| k.phi_row(l, lo, hi)).collect();
    let psis: Vec<Vec<f64>> = (0..np).map(|l| k.psi_row(l, lo, hi)).collect();
    let q = k.p.q.value();
    let mut m = vec![Complex64::new(0.0, 0.0); s * s];
    for i in 0..s {
        let fw = f_weight(lo + i as i64, zeta, q);
        for j in 0..s {
            let kk: f64 = (0..np).map(|l| phis[l][j] * psis[l][i]).sum();
            let delta = if i == j { 1.0 } else { 0.0 };
            m[i * s + j] = Complex64::new(delta, 0.0) - fw * kk;
        }
    }
    Lu::new(m, s).det()
}

/// The exact q-Laplace transform < 1/(zeta q^{X_N + N}; q)_inf > as a
/// windowed Fredholm determinant, with the window grown until the value
/// stabilizes.
pub fn qlaplace(k: &Kernel, zeta: Complex64) -> Result<Complex64, QError> {
    // f(n) switches from 0 to 1 around n* = log_q |zeta|; the kernel decays
    // to the right of 0, so the window must cover [min(n*,0), 0] plus margins
    let nstar = (zeta.norm().ln() / k.p.q.value().ln()).floor() as i64;
    let mut prev: Option<Complex64> = None;
    for margin in [24i64, 48, 96, 192] {
        let lo = nstar.min(0) - margin;
        let hi = margin;
        let d = fredholm_det_window(k, zeta, lo, hi);
        if let Some(p) = prev {
            if (d - p).norm() < 1e-10 * d.norm().max(1e-3) {
                return Ok(d);
            }
        }
        prev = Some(d);
    }
    Err(QError::Convergence(format!(
        "windowed determinant did not stabilize at zeta = {zeta}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use qspecial::poisson::q_poisson_pmf;
    use qspecial::qr;

    fn kernel(q: f64, a: Vec<f64>, alpha: Vec<f64>, t: f64) -> Kernel {
        Kernel::new(QParams::new(qr(q), a, alpha, t).unwrap()).unwrap()
    }

    #[test]
    fn biorthonormality() {
        // sum_n phi_l(n) psi_m(n) = delta_{lm} pins down every convention:
        // the 1/(2 pi i) normalizations, the z^{n+N} powers, and tau
        let k = kernel(0.5, vec![0.9, 0.7], vec![0.3, 0.2], 2.0);
        for l in 0..2 {
            for m in 0..2 {
                let s: f64 = (-60..=60).map(|n| k.phi(l, n) * k.psi(m, n)).sum();
                let want = if l == m { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-9, "l={l} m={m}: {s}");
            }
        }
    }

    #[test]
    fn biorthonormality_with_repeated_rates() {
        // repeated a-values produce higher-order poles in phi
        let k = kernel(0.4, vec![1.0, 1.0, 1.0], vec![0.25, 0.0, 0.0], 3.0);
        for l in 0..3 {
            for m in 0..3 {
                let s: f64 = (-70..=70).map(|n| k.phi(l, n) * k.psi(m, n)).sum();
                let want = if l == m { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-8, "l={l} m={m}: {s}");
            }
        }
    }

    #[test]
    fn balancing_radii_invariance() {
        let p = QParams::new(qr(0.5), vec![0.9, 0.7], vec![0.3, 0.2], 1.5).unwrap();
        let zeta = Complex64::new(-3.7, 0.0);
        let d1 = qlaplace(&Kernel::new(p.clone()).unwrap(), zeta).unwrap();
        let d2 = qlaplace(&Kernel::with_radii(p.clone(), 0.45, 1.5).unwrap(), zeta).unwrap();
        let d3 = qlaplace(&Kernel::with_radii(p, 0.62, 3.0).unwrap(), zeta).unwrap();
        assert_relative_eq!(d1.re, d2.re, max_relative = 1e-8);
        assert_relative_eq!(d1.re, d3.re, max_relative = 1e-8);
        assert!(d1.im.abs() < 1e-10);
    }

    #[test]
    fn single_particle_matches_direct_sum() {
        // N = 1: lambda_1 = -Y + J with Y ~ q-Poisson(alpha/a) and
        // J ~ Poisson(a t) independent, so the transform is a direct sum
        let (q, a, alpha, t) = (0.5, 0.8, 0.4, 1.5);
        let k = kernel(q, vec![a], vec![alpha], t);
        let qq = qr(q);
        let poisson = |j: u32, lam: f64| -> f64 {
            let mut lp = -lam + j as f64 * lam.ln();
            for i in 1..=j {
                lp -= (i as f64).ln();
            }
            lp.exp()
        };
        let pmf = |lam: i64| -> f64 {
            let mut s = 0.0;
            for j in 0..80u32 {
                let y = j as i64 - lam;
                if y >= 0 {
                    s += poisson(j, a * t) * q_poisson_pmf(y as u32, alpha / a, qq).unwrap();
                }
            }
            s
        };
        for mz in [-1.0f64, 0.7, 2.2] {
            let zeta = Complex64::new(-q.powf(-mz), 0.0);
            let mut oracle = 0.0;
            for lam in -60..80 {
                // log-space weight: zeta q^lam = -q^{lam - mz}
                oracle += pmf(lam) * (-ln_qpoch_inf_neg_exp(lam as f64 - mz, qq)).exp();
            }
            let det = qlaplace(&k, zeta).unwrap();
            assert_relative_eq!(det.re, oracle, max_relative = 1e-7);
            assert!(det.im.abs() < 1e-10);
        }
    }

    #[test]
    fn two_particle_matches_measure_marginal() {
        // independent oracle: the exact bottom-row marginal from the torus
        // contour integrals, summed against the q-Laplace weight
        let p = QParams::new(qr(0.5), vec![1.0, 0.9], vec![0.35, 0.0], 0.8).unwrap();
        let k = Kernel::new(p.clone()).unwrap();
        let qq = p.q;
        let zeta = Complex64::new(-2.0, 0.0);
        let mut oracle = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for l in -25i64..=12 {
            let w = whittaker::torus::marginal_bottom(l, &p).unwrap();
            mass += w;
            oracle += w / qpoch_inf(zeta * 0.5f64.powi(l as i32), qq);
        }
        assert!(mass > 1.0 - 1e-7, "marginal mass {mass}");
        let det = qlaplace(&k, zeta).unwrap();
        assert_relative_eq!(det.re, oracle.re, max_relative = 1e-6);
    }

    #[test]
    fn complex_zeta_conjugate_symmetry() {
        // real kernel: G(conj zeta) = conj G(zeta)
        let k = kernel(0.5, vec![0.9, 0.7], vec![0.3, 0.1], 1.0);
        let z = Complex64::new(-1.3, 0.8);
        let d = qlaplace(&k, z).unwrap();
        let dc = qlaplace(&k, z.conj()).unwrap();
        assert_relative_eq!(d.re, dc.re, max_relative = 1e-10);
        assert_relative_eq!(d.im, -dc.im, max_relative = 1e-10);
    }

    #[test]
    fn transform_limits() {
        // zeta -> 0- gives 1; very negative zeta = -q^{-huge} forces the
        // product into the deep tail, so the transform tends to 0
        let k = kernel(0.5, vec![0.9], vec![0.2], 1.0);
        let near_one = qlaplace(&k, Complex64::new(-1e-6, 0.0)).unwrap();
        assert_relative_eq!(near_one.re, 1.0, epsilon = 1e-4);
        let small = qlaplace(&k, Complex64::new(-(0.5f64).powi(-40), 0.0)).unwrap();
        assert!(small.re.abs() < 1e-4, "{}", small.re);
    }
}
