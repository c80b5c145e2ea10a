//! Stationary continuation of the exact determinant formula.
//!
//! The boundary-parameter model has rates a = (1, ..., 1, a) and
//! specializations alpha = (0, ..., 0, alpha) with alpha <= a < 1.  The
//! kernel then splits as K = K_red + (a - alpha) B_1 (x) B_2 with K_red of
//! rank N - 1, and the q-Laplace transform becomes
//!   G(zeta) = (a - alpha) det(1 - A) (L - sum_n (A rho f B_1)(n) B_2(n)),
//! where A = f K_red, rho = (1 - A)^{-1}, and L collects the scalar B_1 B_2
//! sums.  The 1/(a - alpha) pole of L cancels against the prefactor once the
//! residue parts of B_1 (at v = a) and B_2 (at z = alpha) are resummed in
//! closed form, so every piece stays finite as a -> alpha.  That limit gives
//! the transform G_0 of the position of a particle started at the origin with
//! stationary gaps behind it.

use std::cell::{RefCell, RefMut};
use std::collections::HashMap;

use qspecial::qpoch::{qpoch_inf, qpoch_inf_re, qpoch_n_re};
use qspecial::{Complex64, QError, QReal};

use crate::kernel::{f_weight, CachedContour};
use crate::linalg::Lu;

/// Exact transform evaluator for the boundary-parameter model; a == alpha is
/// the stationary point.
pub struct Stationary {
    pub q: QReal,
    /// number of particles N
    pub nn: usize,
    /// rate of the distinguished particle (a -> alpha at stationarity)
    pub a: f64,
    /// boundary specialization parameter
    pub alpha: f64,
    pub t: f64,
    /// inner balancing radius, alpha sqrt(q) < b < a
    pub b: f64,
    /// outer balancing radius, c > 1
    pub c: f64,
    phi_cache: RefCell<HashMap<usize, CachedContour>>,
    psi_cache: RefCell<HashMap<(usize, i32), CachedContour>>,
    b1_cache: RefCell<Option<(CachedContour, CachedContour)>>, // (around 1, around a)
    b2_cache: RefCell<HashMap<i32, CachedContour>>,
    b22_cache: RefCell<Option<CachedContour>>,
    /// scaled-parameter evaluators used when a ladder point pinches the
    /// contour at v = 1 (a = q^{1+j})
    shadow_cache: RefCell<Option<Vec<Stationary>>>,
}

/// Window arrays shared by the determinant and the scalar sums.
struct StatWindow {
    lo: i64,
    zeta: Complex64,
    f: Vec<Complex64>,
    b1_1: Vec<f64>,
    b1_2: Vec<f64>,
    b2: Vec<f64>,
    /// regular part B_2 - B_2^{(res)}, computed directly for n >= 0 (zero
    /// placeholder below)
    b2_reg: Vec<f64>,
    phi: Vec<Vec<f64>>,
    psi: Vec<Vec<f64>>,
}

impl Stationary {
    pub fn new(q: QReal, nn: usize, a: f64, alpha: f64, t: f64) -> Result<Self, QError> {
        let qv = q.value();
        if !(0.0 < alpha && alpha <= a && a < 1.0) {
            return Err(QError::Domain(format!(
                "need 0 < alpha <= a < 1, got a={a}, alpha={alpha}"
            )));
        }
        if qv * a >= alpha {
            return Err(QError::Domain(format!(
                "need q*a < alpha, got q={qv}, a={a}, alpha={alpha}"
            )));
        }
        if nn == 0 || t < 0.0 {
            return Err(QError::Domain("need N >= 1 and t >= 0".into()));
        }
        // balancing base between the lattice-sum bounds alpha sqrt(q) and a
        let b = qv.powf(0.25) * (alpha * a).sqrt();
        Ok(Stationary {
            q,
            nn,
            a,
            alpha,
            t,
            b,
            c: 2.0,
            phi_cache: RefCell::new(HashMap::new()),
            psi_cache: RefCell::new(HashMap::new()),
            b1_cache: RefCell::new(None),
            b2_cache: RefCell::new(HashMap::new()),
            b22_cache: RefCell::new(None),
            shadow_cache: RefCell::new(None),
        })
    }

    fn t_eff(&self) -> f64 {
        self.t.max(0.5)
    }

    fn tau(&self, n: i64) -> f64 {
        if n >= 0 { self.b.powi(n as i32) } else { self.c.powi(n as i32) }
    }

    /// common q-Pochhammer ratio of the v-side integrands
    fn v_poch(&self, v: Complex64) -> Complex64 {
        let qv = self.q.value();
        qpoch_inf(qv * self.alpha / v, self.q)
            / (qpoch_inf(qv * v, self.q).powi(self.nn as i32 - 1)
                * qpoch_inf(qv * v / self.a, self.q))
    }

    /// common q-Pochhammer ratio of the z-side integrands
    fn z_poch(&self, z: Complex64) -> Complex64 {
        let qv = self.q.value();
        qpoch_inf(qv * z, self.q).powi(self.nn as i32 - 1) * qpoch_inf(qv * z / self.a, self.q)
            / qpoch_inf(qv * self.alpha / z, self.q)
    }

    /// distance from x to the nearest other v-side singularity: the origin,
    /// the explicit poles 1 and a, and the denominator ladders q^{-1-j} and
    /// a q^{-1-j}
    fn v_clearance(&self, x: f64) -> f64 {
        let qv = self.q.value();
        let mut d = x;
        for base in [1.0, self.a] {
            if (base - x).abs() > 1e-9 {
                d = d.min((base - x).abs());
            }
            let mut z = base / qv;
            while z < x + d {
                // a ladder point landing exactly on the center merges with
                // the pole there (it sits inside the contour); only distinct
                // nearby points constrain the radius
                if (z - x).abs() > 1e-9 {
                    d = d.min((z - x).abs());
                }
                z /= qv;
            }
            d = d.min((z - x).abs());
        }
        d
    }

    fn contour_around(
        &self,
        center: f64,
        ord: usize,
        f: impl Fn(Complex64) -> Complex64,
    ) -> CachedContour {
        let d = self.v_clearance(center);
        // radius near ord/t balances the e^{-vt} growth on the circle against
        // the pole order
        let r = (ord.max(1) as f64 / self.t_eff()).max(0.02).min(0.4 * d);
        let nodes = 128usize
            .max((8.0 * r * self.t_eff()) as usize)
            .max(24 * ord)
            .min(4096)
            .next_multiple_of(2);
        CachedContour::build(Complex64::new(center, 0.0), r, nodes, f)
    }

    fn origin_contour(&self, radius: f64, f: impl Fn(Complex64) -> Complex64) -> CachedContour {
        let nodes = 256usize
            .max((8.0 * radius * self.t_eff()) as usize)
            .min(16384)
            .next_multiple_of(2);
        CachedContour::build(Complex64::new(0.0, 0.0), radius, nodes, f)
    }

    /// dyadic saddle band for an origin-centred contour at moment power p
    fn band(&self, p: i64, inner: f64) -> (i32, f64) {
        if p >= 0 {
            return (-1, inner);
        }
        let target = (-(p as f64) / self.t_eff()).max(self.c);
        let band = (target / self.c).log2().ceil().max(0.0) as i32;
        (band, self.c * 2f64.powi(band))
    }

    /// phi_l(n), l = 0..N-2: pole of order l + 1 at v = 1 only.
    pub fn phi(&self, l: usize, n: i64) -> f64 {
        let t = self.t;
        let mut cache = self.phi_cache.borrow_mut();
        let contour = cache.entry(l).or_insert_with(|| {
            self.contour_around(1.0, l + 1, |v| {
                (-v * t).exp() / (v - 1.0).powi(l as i32 + 1) * self.v_poch(v)
            })
        });
        self.tau(n) * contour.moment(-(n + self.nn as i64 - l as i64)).re
    }

    /// psi_l(n), l = 0..N-2: poles at the origin and the alpha q^{1+j} ladder.
    pub fn psi(&self, l: usize, n: i64) -> f64 {
        let t = self.t;
        let p = n + self.nn as i64 - l as i64 - 2;
        let (band, radius) = self.band(p, self.b);
        let mut cache = self.psi_cache.borrow_mut();
        let contour = cache.entry((l, band)).or_insert_with(|| {
            self.origin_contour(radius, |z| {
                (z * t).exp() * (z - 1.0).powi(l as i32) * self.z_poch(z)
            })
        });
        contour.moment(p).re / self.tau(n)
    }

    fn b1_contours(&self) -> RefMut<'_, Option<(CachedContour, CachedContour)>> {
        let mut cache = self.b1_cache.borrow_mut();
        if cache.is_none() {
            let t = self.t;
            let a = self.a;
            let f = |v: Complex64| {
                (-v * t).exp() / ((v - 1.0).powi(self.nn as i32 - 1) * (v - a)) * self.v_poch(v)
            };
            let c1 = self.contour_around(1.0, self.nn - 1, f);
            let ca = self.contour_around(a, 1, f);
            *cache = Some((c1, ca));
        }
        cache
    }

    /// B_1(n): poles at v = 1 (order N - 1) and v = a.
    pub fn b1(&self, n: i64) -> f64 {
        self.b1_1(n) + self.b1_2(n)
    }

    /// residue part of B_1 at v = a, in closed form.
    pub fn b1_1(&self, n: i64) -> f64 {
        let sign = if self.nn % 2 == 1 { 1.0 } else { -1.0 };
        let qv = self.q.value();
        sign * self.tau(n) * (-self.a * self.t).exp()
            * qpoch_inf_re(qv * self.alpha / self.a, self.q)
            / (self.a.powi(n as i32 + 1)
                * qpoch_inf_re(self.a, self.q).powi(self.nn as i32 - 1)
                * qpoch_inf_re(qv, self.q))
    }

    /// contribution of the contour around 1; tau(n) times a polynomial of
    /// degree N - 2 in n.
    pub fn b1_2(&self, n: i64) -> f64 {
        let cache = self.b1_contours();
        let (c1, _) = cache.as_ref().unwrap();
        self.tau(n) * c1.moment(-(n + 1)).re
    }

    /// contour part of B_1 around v = a (cross-check against `b1_1`).
    pub fn b1_1_contour(&self, n: i64) -> f64 {
        let cache = self.b1_contours();
        let (_, ca) = cache.as_ref().unwrap();
        self.tau(n) * ca.moment(-(n + 1)).re
    }

    fn b2_integrand(&self, z: Complex64) -> Complex64 {
        (z * self.t).exp() * (z - 1.0).powi(self.nn as i32 - 1) * self.z_poch(z)
            / (z - self.alpha)
    }

    /// B_2(n): poles at the origin, the alpha q^{1+j} ladder, and alpha.
    pub fn b2(&self, n: i64) -> f64 {
        let inner = (1.3 * self.alpha).min(0.5 * (self.alpha + 1.0));
        let (band, radius) = self.band(n, inner);
        let mut cache = self.b2_cache.borrow_mut();
        let contour = cache
            .entry(band)
            .or_insert_with(|| self.origin_contour(radius, |z| self.b2_integrand(z)));
        contour.moment(n).re / self.tau(n)
    }

    /// residue part of B_2 at z = alpha, in closed form.
    pub fn b2_1(&self, n: i64) -> f64 {
        let sign = if self.nn % 2 == 1 { 1.0 } else { -1.0 };
        let qv = self.q.value();
        sign * self.alpha.powi(n as i32) * (self.alpha * self.t).exp()
            * qpoch_inf_re(self.alpha, self.q).powi(self.nn as i32 - 1)
            * qpoch_inf_re(qv * self.alpha / self.a, self.q)
            / (self.tau(n) * qpoch_inf_re(qv, self.q))
    }

    /// regular part B_2 - B_2^{(res)} for n >= 0, from a contour strictly
    /// between the ladder and alpha (no cancellation against the residue).
    pub fn b2_reg(&self, n: i64) -> f64 {
        assert!(n >= 0);
        let qv = self.q.value();
        let mut cache = self.b22_cache.borrow_mut();
        let contour = cache.get_or_insert_with(|| {
            let radius = self.alpha * qv.powf(0.75);
            self.origin_contour(radius, |z| self.b2_integrand(z))
        });
        contour.moment(n).re / self.tau(n)
    }

    fn window_arrays(&self, zeta: Complex64, lo: i64, hi: i64) -> StatWindow {
        let qv = self.q.value();
        let ns: Vec<i64> = (lo..=hi).collect();
        StatWindow {
            lo,
            zeta,
            f: ns.iter().map(|&n| f_weight(n, zeta, qv)).collect(),
            b1_1: ns.iter().map(|&n| self.b1_1(n)).collect(),
            b1_2: ns.iter().map(|&n| self.b1_2(n)).collect(),
            b2: ns.iter().map(|&n| self.b2(n)).collect(),
            b2_reg: ns
                .iter()
                .map(|&n| if n >= 0 { self.b2_reg(n) } else { 0.0 })
                .collect(),
            phi: (0..self.nn - 1)
                .map(|l| ns.iter().map(|&n| self.phi(l, n)).collect())
                .collect(),
            psi: (0..self.nn - 1)
                .map(|l| ns.iter().map(|&n| self.psi(l, n)).collect())
                .collect(),
        }
    }

    /// det(1 - A) and sum_n (A rho f B_1)(n) B_2(n) on the window.
    fn det_and_dressing(&self, w: &StatWindow) -> (Complex64, Complex64) {
        let s = w.f.len();
        let nl = self.nn - 1;
        let mut m = vec![Complex64::new(0.0, 0.0); s * s];
        for i in 0..s {
            for j in 0..s {
                let kk: f64 = (0..nl).map(|l| w.phi[l][j] * w.psi[l][i]).sum();
                let delta = if i == j { 1.0 } else { 0.0 };
                m[i * s + j] = Complex64::new(delta, 0.0) - w.f[i] * kk;
            }
        }
        let lu = Lu::new(m, s);
        let det = lu.det();
        // with this matrix orientation (row index n carries psi and f), the
        // rank-one update identity dresses f B_2 with the resolvent and pairs
        // against B_1
        let fb2: Vec<Complex64> = (0..s).map(|i| w.f[i] * w.b2[i]).collect();
        let y = lu.solve(&fb2); // y = rho f B_2, and A rho = rho - 1
        let dressing: Complex64 = (0..s)
            .map(|i| (y[i] - fb2[i]) * (w.b1_1[i] + w.b1_2[i]))
            .sum();
        (det, dressing)
    }

    /// n-independent constant C in the residue-residue product
    /// B_1^{(res)}(n) B_2^{(res)}(n) = C (alpha/a)^n / a.
    fn residue_product_constant(&self) -> f64 {
        let qv = self.q.value();
        ((self.alpha - self.a) * self.t).exp()
            * (qpoch_inf_re(qv * self.alpha / self.a, self.q) / qpoch_inf_re(qv, self.q)).powi(2)
            * (qpoch_inf_re(self.alpha, self.q) / qpoch_inf_re(self.a, self.q))
                .powi(self.nn as i32 - 1)
    }

    /// sum_n f(n) [B_1 B_2 - B_1^{(res)} B_2^{(res)}](n): all the scalar pole
    /// sums except the residue-residue product, grouped pointwise so each
    /// term stays small at a = alpha.  For n >= 0 the residue part of B_2 is
    /// removed exactly via the regular contour; for n < 0 both pieces decay
    /// and are subtracted directly.
    fn offdiagonal_sum(&self, w: &StatWindow) -> Complex64 {
        let cpa = self.residue_product_constant() / self.a;
        let r = self.alpha / self.a;
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..w.f.len() {
            let n = w.lo + i as i64;
            let term_a = if n >= 0 {
                w.b1_1[i] * w.b2_reg[i]
            } else {
                w.b1_1[i] * w.b2[i] - cpa * r.powi(n as i32)
            };
            s += w.f[i] * (term_a + w.b1_2[i] * w.b2[i]);
        }
        // below the window only the subtracted geometric piece survives (the
        // contour products are factorially small there); its tail decays like
        // (q a / alpha)^|n|, much slower than the window growth when a is
        // well above alpha, so extend it explicitly
        let qv = self.q.value();
        for n in (w.lo - 2048..w.lo).rev() {
            let f = f_weight(n, w.zeta, qv);
            if f.norm() == 0.0 {
                break;
            }
            let term = -f * (cpa * r.powi(n as i32));
            s += term;
            if term.norm() < 1e-16 * s.norm().max(1e-6) {
                break;
            }
        }
        s
    }

    /// L by the direct bilateral sum (a != alpha only).
    fn l_direct(&self, w: &StatWindow) -> Complex64 {
        let mut s = Complex64::new(1.0 / (self.a - self.alpha), 0.0);
        for i in 0..w.f.len() {
            s -= w.f[i] * ((w.b1_1[i] + w.b1_2[i]) * w.b2[i]);
        }
        s
    }

    /// L with the residue-residue sum resummed in closed form via the
    /// bilateral summation identity (a != alpha; also needs q a < alpha).
    fn l_resummed(&self, zeta: Complex64, w: &StatWindow) -> Complex64 {
        let q = self.q;
        let qv = q.value();
        let (a, al) = (self.a, self.alpha);
        let ratio = qpoch_inf(al / (a * zeta), q) * qpoch_inf(a * zeta * qv / al, q)
            * qpoch_inf_re(al * qv / a, q)
            / (qpoch_inf(1.0 / zeta, q) * qpoch_inf(qv * zeta, q) * qpoch_inf_re(qv * a / al, q))
            * (qpoch_inf_re(al, q) / qpoch_inf_re(a, q)).powi(self.nn as i32 - 1)
            * ((al - a) * self.t).exp();
        (Complex64::new(1.0, 0.0) - ratio) / (a - al) - self.offdiagonal_sum(w)
    }

    /// the a -> alpha limit of (1 - ratio)/(a - alpha): an explicit
    /// logarithmic-derivative series plus the drift term t.
    fn l_residue_limit(&self, zeta: Complex64) -> Complex64 {
        let qv = self.q.value();
        let al = self.alpha;
        let one = Complex64::new(1.0, 0.0);
        let mut s = Complex64::new(0.0, 0.0);
        let mut qn = 1.0f64;
        loop {
            let t1 = (qn / zeta) / (one - qn / zeta);
            let t2 = zeta * (qn * qv) / (one - zeta * qn * qv);
            let t3 = (qn * qv) / (1.0 - qn * qv);
            let t4 = al * qn / (1.0 - al * qn);
            s += t1 - t2 + Complex64::new(2.0 * t3 + (self.nn as f64 - 1.0) * t4, 0.0);
            qn *= qv;
            if qn < 1e-18 {
                break;
            }
        }
        -s / al + self.t
    }

    /// true when a point of the ladder a q^{-1-j} lands on the pole at v = 1
    /// (a = q^{1+j}), pinching the phi contours: the residues then diverge
    /// individually and the transform is only defined as a limit in a.
    fn ladder_collision(&self) -> bool {
        let qv = self.q.value();
        let mut z = self.a / qv;
        while z < 1.5 {
            if (z - 1.0).abs() < 1e-6 {
                return true;
            }
            z /= qv;
        }
        false
    }

    /// Evaluate at scaled parameter pairs (s a, s alpha) and Richardson-
    /// extrapolate back to s = 1.  The transforms are analytic in the common
    /// scale, so the pinched configuration is recovered as the two-sided
    /// limit with O(delta^4) error from the four-point stencil.
    fn extrapolated(
        &self,
        zeta: Complex64,
        eval: fn(&Stationary, Complex64) -> Result<Complex64, QError>,
    ) -> Result<Complex64, QError> {
        let mut cache = self.shadow_cache.borrow_mut();
        if cache.is_none() {
            let d = 0.01;
            let mut v = Vec::with_capacity(4);
            for s in [1.0 - d, 1.0 + d, 1.0 - 0.5 * d, 1.0 + 0.5 * d] {
                v.push(Stationary::new(self.q, self.nn, s * self.a, s * self.alpha, self.t)?);
            }
            *cache = Some(v);
        }
        let sh = cache.as_ref().unwrap();
        let wide = 0.5 * (eval(&sh[0], zeta)? + eval(&sh[1], zeta)?);
        let tight = 0.5 * (eval(&sh[2], zeta)? + eval(&sh[3], zeta)?);
        Ok((4.0 * tight - wide) / 3.0)
    }

    /// pick a window adapted to zeta and widen it until the value stabilizes.
    fn adaptive<Fv: Fn(&StatWindow) -> Complex64>(
        &self,
        zeta: Complex64,
        eval: Fv,
    ) -> Result<Complex64, QError> {
        let nstar = (zeta.norm().ln() / self.q.value().ln()).floor() as i64;
        let mut prev: Option<Complex64> = None;
        for margin in [24i64, 48, 96, 192] {
            let w = self.window_arrays(zeta, nstar.min(0) - margin, margin);
            let v = eval(&w);
            if let Some(p) = prev {
                if (v - p).norm() < 1e-9 * v.norm().max(1e-2) {
                    return Ok(v);
                }
            }
            prev = Some(v);
        }
        Err(QError::Convergence(format!(
            "stationary window did not stabilize at zeta = {zeta}"
        )))
    }

    /// G(zeta), the q-Laplace transform of the last particle position plus N
    /// (a != alpha).  Uses the resummed L: the slow geometric piece of the
    /// scalar sum, with rate alpha/a, is summed in closed form so the window
    /// converges uniformly even arbitrarily close to a = alpha.
    pub fn g(&self, zeta: Complex64) -> Result<Complex64, QError> {
        if self.ladder_collision() {
            return self.extrapolated(zeta, Self::g_impl);
        }
        self.g_impl(zeta)
    }

    fn g_impl(&self, zeta: Complex64) -> Result<Complex64, QError> {
        self.adaptive(zeta, |w| {
            let (det, dress) = self.det_and_dressing(w);
            (self.a - self.alpha) * det * (self.l_resummed(zeta, w) - dress)
        })
    }

    /// G(zeta) with L by the direct bilateral sum; a cross-check of the
    /// resummation, usable when alpha/a is well below 1.
    pub fn g_direct(&self, zeta: Complex64) -> Result<Complex64, QError> {
        if self.ladder_collision() {
            return self.extrapolated(zeta, Self::g_direct_impl);
        }
        self.g_direct_impl(zeta)
    }

    fn g_direct_impl(&self, zeta: Complex64) -> Result<Complex64, QError> {
        self.adaptive(zeta, |w| {
            let (det, dress) = self.det_and_dressing(w);
            (self.a - self.alpha) * det * (self.l_direct(w) - dress)
        })
    }

    /// V_N(zeta) = lim_{a -> alpha} G(zeta)/(a - alpha) at the stationary
    /// point a == alpha.
    pub fn v_n(&self, zeta: Complex64) -> Result<Complex64, QError> {
        if self.a != self.alpha {
            return Err(QError::Domain("V_N is defined at a == alpha".into()));
        }
        if self.ladder_collision() {
            return self.extrapolated(zeta, Self::v_n_impl);
        }
        self.v_n_impl(zeta)
    }

    fn v_n_impl(&self, zeta: Complex64) -> Result<Complex64, QError> {
        let l_res = self.l_residue_limit(zeta);
        self.adaptive(zeta, |w| {
            let (det, dress) = self.det_and_dressing(w);
            det * (l_res - self.offdiagonal_sum(w) - dress)
        })
    }

    /// det(1 - f K_red) alone on the adaptive window: the determinant factor
    /// of the transform, whose large-N scaling limit is the Airy-kernel
    /// Fredholm determinant.
    pub fn det_kred(&self, zeta: Complex64) -> Result<Complex64, QError> {
        if self.ladder_collision() {
            return self.extrapolated(zeta, Self::det_kred_impl);
        }
        self.det_kred_impl(zeta)
    }

    fn det_kred_impl(&self, zeta: Complex64) -> Result<Complex64, QError> {
        self.adaptive(zeta, |w| self.det_and_dressing(w).0)
    }

    /// stationary transform G_0(zeta) = < 1 / (zeta q^{X_N + N - 1}; q)_inf >
    /// for the process started at the origin, by the telescoping V_N series.
    pub fn g0(&self, zeta: Complex64) -> Result<Complex64, QError> {
        let qv = self.q.value();
        let mut s = Complex64::new(0.0, 0.0);
        let mut vk = self.v_n(zeta)?;
        for k in 0..64u32 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let weight =
                sign * qv.powf(0.5 * k as f64 * (k as f64 + 1.0)) / qpoch_n_re(qv, self.q, k);
            if weight.abs() < 1e-14 {
                return Ok(s * self.alpha / qpoch_inf_re(qv, self.q));
            }
            let vk1 = self.v_n(zeta * qv.powi(-(k as i32) - 1))?;
            s += weight * (vk - vk1);
            vk = vk1;
        }
        Err(QError::Convergence("G_0 series did not terminate".into()))
    }

    /// G_0 from G by the q-binomial resummation (a != alpha cross-route).
    pub fn g0_via_g(&self, zeta: Complex64) -> Result<Complex64, QError> {
        let qv = self.q.value();
        let r = self.alpha / self.a;
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..256u32 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let weight = sign * qv.powf(0.5 * k as f64 * (k as f64 - 1.0)) * r.powi(k as i32)
                / qpoch_n_re(qv, self.q, k);
            if weight.abs() < 1e-14 {
                return Ok(s / qpoch_inf_re(r, self.q));
            }
            s += weight * self.g(zeta * qv.powi(-(k as i32)))?;
        }
        Err(QError::Convergence("G_0 series from G did not terminate".into()))
    }

    /// G from G_0: the observed position is the origin-started position
    /// shifted down by an independent q-Poisson(alpha/a) first gap, so G is a
    /// q-Poisson mixture of G_0 at arguments zeta q^{-m} (a != alpha).  The
    /// transform dies off super-exponentially at large |zeta|, so the series
    /// is cut when consecutive contributions become negligible.
    pub fn g_via_g0<Fg0: Fn(Complex64) -> Result<Complex64, QError>>(
        &self,
        zeta: Complex64,
        g0: Fg0,
    ) -> Result<Complex64, QError> {
        let qv = self.q.value();
        let r = self.alpha / self.a;
        let mut s = Complex64::new(0.0, 0.0);
        let mut small = 0;
        for m in 0..256u32 {
            let weight = r.powi(m as i32) / qpoch_n_re(qv, self.q, m);
            let term = weight * g0(zeta * qv.powi(-(m as i32)))?;
            s += term;
            small = if term.norm() < 1e-13 * s.norm().max(1e-3) { small + 1 } else { 0 };
            if weight.abs() < 1e-14 || (m >= 3 && small >= 2) {
                return Ok(s * qpoch_inf_re(r, self.q));
            }
        }
        Err(QError::Convergence("G from G_0 series did not terminate".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{qlaplace, Kernel};
    use approx::assert_relative_eq;
    use qspecial::params::QParams;
    use qspecial::qr;

    fn model(a: f64) -> Stationary {
        Stationary::new(qr(0.5), 3, a, 0.35, 1.2).unwrap()
    }

    #[test]
    fn b1_residue_closed_form() {
        // the contour piece around v = a must equal the closed-form residue
        let s = model(0.6);
        for n in [-7i64, -1, 0, 3, 11] {
            assert_relative_eq!(s.b1_1_contour(n), s.b1_1(n), max_relative = 1e-10);
        }
    }

    #[test]
    fn b2_residue_closed_form() {
        // residue of the B_2 integrand at z = alpha via a small circle
        let s = model(0.6);
        let alpha = s.alpha;
        let circle = CachedContour::build(Complex64::new(alpha, 0.0), 0.05 * alpha, 256, |z| {
            s.b2_integrand(z)
        });
        for n in [-4i64, 0, 2, 9] {
            let residue = circle.moment(n).re / s.tau(n);
            assert_relative_eq!(residue, s.b2_1(n), max_relative = 1e-10);
        }
    }

    #[test]
    fn b2_regular_part_matches_difference() {
        let s = model(0.6);
        for n in [0i64, 1, 4, 9] {
            assert_relative_eq!(s.b2_reg(n), s.b2(n) - s.b2_1(n), max_relative = 1e-8);
        }
    }

    #[test]
    fn matches_generic_kernel_family() {
        // the specialized contour functions against the generic ones
        let s = model(0.6);
        let p = QParams::new(qr(0.5), vec![1.0, 1.0, 0.6], vec![0.0, 0.0, 0.35], 1.2).unwrap();
        let k = Kernel::with_radii(p, s.b, s.c).unwrap();
        for l in 0..2 {
            for n in [-6i64, -1, 0, 4, 13] {
                assert_relative_eq!(s.phi(l, n), k.phi(l, n), max_relative = 1e-9);
                assert_relative_eq!(s.psi(l, n), k.psi(l, n), max_relative = 1e-9);
            }
        }
        for n in [-6i64, -1, 0, 4, 13] {
            assert_relative_eq!(s.b1(n), k.phi(2, n), max_relative = 1e-9);
            assert_relative_eq!((s.a - s.alpha) * s.b2(n), k.psi(2, n), max_relative = 1e-9);
        }
    }

    #[test]
    fn rank_split_matches_full_determinant() {
        // G from the rank-one-split formula == the full windowed determinant
        let s = model(0.6);
        let p = QParams::new(qr(0.5), vec![1.0, 1.0, 0.6], vec![0.0, 0.0, 0.35], 1.2).unwrap();
        let k = Kernel::with_radii(p, s.b, s.c).unwrap();
        for mz in [-0.5f64, 1.0, 2.5] {
            let zeta = Complex64::new(-(0.5f64).powf(-mz), 0.0);
            let g = s.g(zeta).unwrap();
            let full = qlaplace(&k, zeta).unwrap();
            assert_relative_eq!(g.re, full.re, max_relative = 1e-5);
            assert!(g.im.abs() < 1e-9);
        }
    }

    #[test]
    fn bilateral_resummation_of_l() {
        // direct and resummed L agree inside q a < alpha < a < 1
        let s = model(0.6);
        for mz in [0.3f64, 1.7] {
            let zeta = Complex64::new(-(0.5f64).powf(-mz), 0.0);
            let g1 = s.g_direct(zeta).unwrap();
            let g2 = s.g(zeta).unwrap();
            assert_relative_eq!(g1.re, g2.re, max_relative = 1e-8);
        }
    }

    #[test]
    fn stationary_single_particle_is_poisson() {
        // N = 1, a = alpha: the particle starts at the origin and jumps
        // freely at rate alpha, so its position at time t is Poisson(alpha t)
        let s = Stationary::new(qr(0.5), 1, 0.4, 0.4, 1.7).unwrap();
        let poisson = |j: u32, lam: f64| -> f64 {
            let mut lp = -lam + f64::from(j) * lam.ln();
            for i in 1..=j {
                lp -= f64::from(i).ln();
            }
            lp.exp()
        };
        for mz in [-0.8f64, 0.9, 2.1] {
            let zeta = Complex64::new(-(0.5f64).powf(-mz), 0.0);
            let mut oracle = 0.0;
            for j in 0..80u32 {
                let e = f64::from(j) - mz; // zeta q^j = -q^(j - mz)
                oracle += poisson(j, 0.4 * 1.7)
                    * (-qspecial::qpoch::ln_qpoch_inf_neg_exp(e, qr(0.5))).exp();
            }
            let g0 = s.g0(zeta).unwrap();
            assert_relative_eq!(g0.re, oracle, max_relative = 1e-7);
            assert!(g0.im.abs() < 1e-9);
        }
    }

    #[test]
    fn continuation_routes_agree_off_stationarity() {
        // the stationary telescoping route must be the a -> alpha limit of
        // the q-binomial route: the gap closes linearly in a - alpha
        let zeta = Complex64::new(-2.3, 0.0);
        let stat = Stationary::new(qr(0.5), 2, 0.35, 0.35, 1.2).unwrap();
        let g0_stat = stat.g0(zeta).unwrap();
        let mut errs = Vec::new();
        for eps in [0.04, 0.02] {
            let s = Stationary::new(qr(0.5), 2, 0.35 + eps, 0.35, 1.2).unwrap();
            let g0_eps = s.g0_via_g(zeta).unwrap();
            errs.push((g0_eps - g0_stat).norm());
        }
        assert!(errs[0] < 0.05, "step 0.04 gave {}", errs[0]);
        let ratio = errs[0] / errs[1];
        assert!((1.2..3.3).contains(&ratio), "not linear: {errs:?}");
    }

    #[test]
    fn mixture_identity_between_transforms() {
        // G(zeta) = sum_m P(first gap = m) G_0(zeta q^m) at a != alpha
        let s = model(0.6);
        let zeta = Complex64::new(-1.4, 0.0);
        let lhs = s.g(zeta).unwrap();
        let rhs = s.g_via_g0(zeta, |z| s.g0_via_g(z)).unwrap();
        assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-6);
    }
}
