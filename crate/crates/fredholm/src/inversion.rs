//! Series inversion of the q-Laplace transform.
//!
//! For a probability density f on Z the transform
//! G(zeta) = sum_n f(n)/(zeta q^n; q)_inf is analytic except for simple poles
//! at zeta = q^{-k}, k in Z.  The density and distribution function are
//! recovered from the pole residues R_k:
//!   f(n)      = -int_{C_0} dx/(2 pi i x^{n+1}) (q;q)/(q x;q) sum_k (qx)^k R_k,
//!   P(X <= n) = -int_{C_0} dx/(2 pi i x^{n+1}) (q;q)/(x;q)   sum_k (qx)^k R_k,
//! with C_0 a circle around the origin of radius < 1.  The k-sum converges on
//! the circle when q |x| is larger than the geometric decay rate of the left
//! tail of f, so the radius is a parameter.  If X = X_0 - chi - 1 with an
//! independent chi ~ qPo(r), the generating function of chi divides out and
//! the distribution of the centered X_0 follows from the same residues.

use qspecial::qpoch::{qpoch_inf, qpoch_inf_re};
use qspecial::{Complex64, QError, QReal};

/// Transform of an explicitly tabulated density: weights w for the points
/// offset, offset+1, ...  Terms with a huge argument zeta q^n are dropped:
/// their reciprocal Pochhammer value underflows to zero long before the
/// partial products would overflow.
pub fn density_transform(
    offset: i64,
    w: Vec<f64>,
    q: QReal,
) -> impl Fn(Complex64) -> Result<Complex64, QError> {
    move |zeta: Complex64| {
        let qv = q.value();
        let mut s = Complex64::new(0.0, 0.0);
        for (i, &fi) in w.iter().enumerate() {
            let a = zeta * qv.powi((offset + i as i64) as i32);
            if a.norm() < 1e10 {
                s += fi / qpoch_inf(a, q);
            }
        }
        Ok(s)
    }
}

/// Residue of a transform at zeta = q^{-k}, by a circle of radius
/// q^{-k}(1-q)/4 around the pole (a quarter of the distance to the
/// neighboring poles).
pub fn transform_residue<F>(g: F, q: QReal, k: i64, nodes: usize) -> Result<Complex64, QError>
where
    F: Fn(Complex64) -> Result<Complex64, QError>,
{
    let qv = q.value();
    let center = qv.powi(-(k as i32));
    let radius = center * (1.0 - qv) / 4.0;
    let mut s = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let th = 2.0 * std::f64::consts::PI * j as f64 / nodes as f64;
        let dz = radius * Complex64::new(th.cos(), th.sin());
        s += dz * g(Complex64::new(center, 0.0) + dz)?;
    }
    Ok(s / nodes as f64)
}

/// Residues R_k for k in [k_lo, k_hi] (inclusive).
pub struct ResidueTable {
    pub q: QReal,
    pub k_lo: i64,
    pub r: Vec<Complex64>,
}

impl ResidueTable {
    pub fn build<F>(g: F, q: QReal, k_lo: i64, k_hi: i64, nodes: usize) -> Result<Self, QError>
    where
        F: Fn(Complex64) -> Result<Complex64, QError>,
    {
        let r = (k_lo..=k_hi)
            .map(|k| transform_residue(&g, q, k, nodes))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ResidueTable { q, k_lo, r })
    }

    /// sum_k (q x)^k R_k on the inversion circle.
    fn weighted_sum(&self, x: Complex64) -> Complex64 {
        let qx = x * self.q.value();
        let mut s = Complex64::new(0.0, 0.0);
        for (i, &rk) in self.r.iter().enumerate() {
            let k = self.k_lo + i as i64;
            s += qx.powi(k as i32) * rk;
        }
        s
    }

    /// Coefficient extraction -int_{C_0} dx/(2 pi i x^{n+1}) h(x) S(x) on a
    /// circle of the given radius.
    fn extract<H>(&self, n: i64, radius: f64, nodes: usize, h: H) -> f64
    where
        H: Fn(Complex64) -> Complex64,
    {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..nodes {
            let th = 2.0 * std::f64::consts::PI * j as f64 / nodes as f64;
            let x = radius * Complex64::new(th.cos(), th.sin());
            s += x.powi(-(n as i32)) * h(x) * self.weighted_sum(x);
        }
        -s.re / nodes as f64
    }

    /// density f(n).
    pub fn pmf(&self, n: i64, radius: f64, nodes: usize) -> f64 {
        let q = self.q;
        let qq = qpoch_inf_re(q.value(), q);
        self.extract(n, radius, nodes, |x| qq / qpoch_inf(x * q.value(), q))
    }

    /// distribution function P(X <= n).
    pub fn cdf(&self, n: i64, radius: f64, nodes: usize) -> f64 {
        let q = self.q;
        let qq = qpoch_inf_re(q.value(), q);
        self.extract(n, radius, nodes, |x| qq / qpoch_inf(x, q))
    }

    /// P(X_0 <= n) when X = X_0 - chi with chi ~ qPo(ratio) independent of
    /// X_0 (the residues are those of the transform of X).  Needs
    /// radius > ratio so the gap generating function expands on the circle.
    pub fn cdf_deconvolved(&self, n: i64, ratio: f64, radius: f64, nodes: usize) -> f64 {
        assert!(radius > ratio, "inversion circle must enclose the gap scale");
        let q = self.q;
        let qq = qpoch_inf_re(q.value(), q) / qpoch_inf_re(ratio, q);
        self.extract(n, radius, nodes, |x| {
            qq * qpoch_inf(Complex64::new(ratio, 0.0) / x, q) / qpoch_inf(x, q)
        })
    }
}
