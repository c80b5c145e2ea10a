//! Stationary-measure statistics and the KPZ scaling constants (kappa, eta,
//! gamma) for the q-deformed exclusion process, with the characteristic-line
//! identities available as built-in consistency checks.

use qspecial::gamma::{q_digamma, q_digamma_double_prime, q_digamma_prime};
use qspecial::{QError, QReal};

/// Average gap density rho(alpha) = sum_{k>=0} alpha q^k/(1 - alpha q^k).
pub fn density_from_alpha(alpha: f64, q: QReal) -> Result<f64, QError> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(QError::Domain(format!("alpha must lie in [0,1), got {alpha}")));
    }
    let qv = q.value();
    let mut sum = 0.0;
    let mut aq = alpha;
    while aq > 1e-18 {
        sum += aq / (1.0 - aq);
        aq *= qv;
    }
    Ok(sum)
}

/// Inverse of `density_from_alpha` by bisection on (0, 1-1e-12).
pub fn alpha_from_density(rho: f64, q: QReal) -> Result<f64, QError> {
    if rho < 0.0 {
        return Err(QError::Domain(format!("density must be >= 0, got {rho}")));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-12);
    if density_from_alpha(hi, q)? < rho {
        return Err(QError::Domain(format!("density {rho} unreachable (alpha -> 1)")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if density_from_alpha(mid, q)? < rho {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// rho'(alpha) = sum_k q^k/(1 - alpha q^k)^2.
pub fn density_prime(alpha: f64, q: QReal) -> f64 {
    let qv = q.value();
    let mut sum = 0.0;
    let mut qk = 1.0;
    while qk > 1e-18 {
        let d = 1.0 - alpha * qk;
        sum += qk / (d * d);
        qk *= qv;
    }
    sum
}

/// rho''(alpha) = 2 sum_k q^{2k}/(1 - alpha q^k)^3.
pub fn density_double_prime(alpha: f64, q: QReal) -> f64 {
    let qv = q.value();
    let mut sum = 0.0;
    let mut qk = 1.0;
    while qk > 1e-18 {
        let d = 1.0 - alpha * qk;
        sum += qk * qk / (d * d * d);
        qk *= qv;
    }
    2.0 * sum
}

/// Bundle of stationary statistics at a given source rate alpha.
#[derive(Debug, Clone, Copy)]
pub struct StationaryStats {
    /// mean gap (zero-range occupancy) density
    pub rho: f64,
    /// particle density of the exclusion process, 1/(1+rho)
    pub rho0: f64,
    /// stationary current (equals alpha)
    pub j: f64,
    /// derivative of the exclusion-process current at density rho0
    pub j_prime: f64,
    /// gap-variance coefficient A = alpha rho'(alpha)
    pub a_coeff: f64,
    /// KPZ cubed fluctuation coefficient c^3 = -alpha^2 rho''/(2 rho')
    pub c_cubed: f64,
}

pub fn stationary_stats(alpha: f64, q: QReal) -> Result<StationaryStats, QError> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(QError::Domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let rho = density_from_alpha(alpha, q)?;
    let rp = density_prime(alpha, q);
    let rpp = density_double_prime(alpha, q);
    Ok(StationaryStats {
        rho,
        rho0: 1.0 / (1.0 + rho),
        j: alpha,
        j_prime: alpha - (1.0 + rho) / rp,
        a_coeff: alpha * rp,
        c_cubed: -alpha * alpha * rpp / (2.0 * rp),
    })
}

/// The three KPZ scaling constants at alpha = q^theta:
/// kappa (time), eta (position), gamma (fluctuation).
#[derive(Debug, Clone, Copy)]
pub struct KpzCoefficients {
    pub kappa: f64,
    pub eta: f64,
    pub gamma: f64,
}

pub fn kpz_coefficients(theta: f64, q: QReal) -> KpzCoefficients {
    assert!(theta > 0.0, "theta must be positive");
    let qv = q.value();
    let qt = qv.powf(theta);
    let (mut kappa, mut eta, mut gamma3) = (0.0, 0.0, 0.0);
    let mut qn = 1.0;
    while qn > 1e-18 {
        let u = qt * qn; // q^{theta+n}
        let d = 1.0 - u;
        kappa += qn / (d * d);
        eta += u * u / (d * d);
        gamma3 += u * u / (d * d * d);
        qn *= qv;
    }
    KpzCoefficients { kappa, eta, gamma: gamma3.cbrt() }
}

/// The same constants through the q-digamma route (cross-check form).
pub fn kpz_coefficients_digamma(theta: f64, q: QReal) -> KpzCoefficients {
    let qv = q.value();
    let lq = qv.ln();
    let p1 = q_digamma_prime(theta, q);
    let kappa = p1 / (lq * lq * qv.powf(theta));
    let eta = p1 / (lq * lq) - q_digamma(theta, q) / lq - (1.0 - qv).ln() / lq;
    let gamma = -((p1 * lq - q_digamma_double_prime(theta, q)) / 2.0).cbrt() / lq;
    KpzCoefficients { kappa, eta, gamma }
}

/// Residuals of the two characteristic-line identities at alpha = q^theta:
/// |alpha kappa - (eta-1) - 1/rho0| and |j'(rho0) kappa - (eta-1)|.
pub fn check_characteristics(theta: f64, q: QReal) -> (f64, f64) {
    let alpha = q.value().powf(theta);
    let k = kpz_coefficients(theta, q);
    let st = stationary_stats(alpha, q).expect("alpha = q^theta lies in (0,1)");
    let r1 = (alpha * k.kappa - (k.eta - 1.0) - 1.0 / st.rho0).abs();
    let r2 = (st.j_prime * k.kappa - (k.eta - 1.0)).abs();
    (r1, r2)
}

/// A point of the KPZ rescaling: parameters (theta, omega, s) plus the
/// derived constants.
#[derive(Debug, Clone, Copy)]
pub struct ScalingPoint {
    pub q: QReal,
    pub theta: f64,
    pub omega: f64,
    pub s: f64,
    pub coeffs: KpzCoefficients,
}

impl ScalingPoint {
    pub fn new(q: QReal, theta: f64, omega: f64, s: f64) -> Self {
        let coeffs = kpz_coefficients(theta, q);
        ScalingPoint { q, theta, omega, s, coeffs }
    }

    /// Base specialization parameter q^theta (omega = 0 value of alpha_N).
    pub fn alpha_base(&self) -> f64 {
        self.q.value().powf(self.theta)
    }
}

/// Finite-N parameters derived from a scaling point.
#[derive(Debug, Clone, Copy)]
pub struct ScaledParameters {
    pub alpha_n: f64,
    /// zeta_N = -q^{-zeta_exponent}; stored in exponent form because the
    /// magnitude overflows f64 long before N gets interesting
    pub zeta_exponent: f64,
    pub t_n: f64,
    pub x_n: f64,
}

pub fn scaled_parameters(point: &ScalingPoint, n: u64) -> Result<ScaledParameters, QError> {
    assert!(n >= 1);
    let k = point.coeffs;
    let n13 = (n as f64).cbrt();
    let alpha_n = point.alpha_base() * (1.0 + point.omega / (k.gamma * n13));
    if !(0.0 < alpha_n && alpha_n < 1.0) {
        return Err(QError::Domain(format!(
            "scaled alpha_N = {alpha_n} leaves (0,1) at N = {n}, omega = {}",
            point.omega
        )));
    }
    Ok(ScaledParameters {
        alpha_n,
        zeta_exponent: k.eta * n as f64 - k.gamma * n13 * point.s,
        t_n: k.kappa * n as f64,
        x_n: (k.eta - 1.0) * n as f64,
    })
}

/// The characteristic-line bracket that should approach s - omega^2 after
/// rescaling by v_c/(gamma N^{1/3}):
///   t - (1/alpha)[ S1 + S2 + S3 + (N-1) rho(alpha) ]
/// with zeta = -q^{-m} kept in exponent form (m = eta N - gamma N^{1/3} s),
///   S1 = -sum_n 1/(1 + q^{-(n+m)}),   S2 = sum_n 1/(1 + q^{m-n-1}),
///   S3 = 2 sum_n q^{n+1}/(1 - q^{n+1}).
pub fn characteristic_bracket_rescaled(point: &ScalingPoint, n: u64) -> Result<f64, QError> {
    let sp = scaled_parameters(point, n)?;
    let q = point.q.value();
    let lq = q.ln();
    let m = sp.zeta_exponent;
    let alpha = sp.alpha_n;

    let logistic = |e: f64| -> f64 {
        // 1/(1 + q^e), stable for any sign of e
        if e * lq > 40.0 {
            0.0
        } else {
            1.0 / (1.0 + (e * lq).exp())
        }
    };

    let mut s1 = 0.0;
    let mut s2 = 0.0;
    let mut nn = 0.0;
    loop {
        let t1 = logistic(-(nn + m));
        let t2 = logistic(m - nn - 1.0);
        s1 -= t1;
        s2 += t2;
        nn += 1.0;
        if t1 < 1e-15 && t2 < 1e-15 && nn > m {
            break;
        }
        if nn > 1e8 {
            return Err(QError::Convergence("characteristic bracket series".into()));
        }
    }
    let mut s3 = 0.0;
    let mut qk = q;
    while qk > 1e-18 {
        s3 += qk / (1.0 - qk);
        qk *= q;
    }
    s3 *= 2.0;
    let rho = density_from_alpha(alpha, point.q)?;
    let bracket = sp.t_n - (s1 + s2 + s3 + (n as f64 - 1.0) * rho) / alpha;
    let vc = point.alpha_base();
    Ok(vc / (point.coeffs.gamma * (n as f64).cbrt()) * bracket)
}
