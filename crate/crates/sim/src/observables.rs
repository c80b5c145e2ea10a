//! Estimators applied to simulated trajectories: the empirical q-Laplace
//! transform, KPZ-scale recentring, and a one-sample KS statistic.

use qspecial::qpoch::ln_qpoch_inf_neg_exp;
use qspecial::QReal;

/// Monte Carlo estimate of < 1/(zeta q^Y; q)_inf > at zeta = -q^{-m} from
/// integer samples of Y, computed in log space so very negative Y - m cannot
/// overflow.  Returns (mean, standard error).
pub fn empirical_qlaplace(samples: &[i64], m: f64, q: QReal) -> (f64, f64) {
    let n = samples.len() as f64;
    let mut mean = 0.0;
    let mut sq = 0.0;
    for &y in samples {
        let v = (-ln_qpoch_inf_neg_exp(y as f64 - m, q)).exp();
        mean += v;
        sq += v * v;
    }
    mean /= n;
    sq /= n;
    (mean, ((sq - mean * mean).max(0.0) / n).sqrt())
}

/// KPZ-scale coordinate of a position: u = -(x - (eta - 1) n) / (gamma n^{1/3}).
pub fn scaled_position(x: i64, n: usize, eta: f64, gamma: f64) -> f64 {
    -(x as f64 - (eta - 1.0) * n as f64) / (gamma * (n as f64).cbrt())
}

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    d
}
