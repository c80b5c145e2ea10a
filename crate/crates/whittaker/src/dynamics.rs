//! Markov dynamics on interlaced arrays: jump rates, the push move, and the
//! stationary-boundary initial measure.

use qspecial::params::QParams;
use qspecial::poisson::q_poisson_pmf;
use qspecial::{QError, QReal};

use crate::GTPattern;

/// q^e with the boundary conventions e = +infinity -> 0 (so 1 - q^e -> 1).
fn qpow(q: QReal, e: f64) -> f64 {
    if e.is_infinite() && e > 0.0 {
        0.0
    } else {
        q.value().powf(e)
    }
}

/// Entry lambda^{(k)}_j extended by the boundary conventions
/// lambda^{(.)}_0 = +infty, lambda^{(k)}_{k+1} = -infty,
/// lambda^{(k-1)}_k = -infty.
fn entry_ext(p: &GTPattern, j: i64, k: usize) -> f64 {
    if j <= 0 {
        f64::INFINITY
    } else if j as usize > k {
        f64::NEG_INFINITY
    } else {
        p.entry(j as usize, k) as f64
    }
}

/// Jump rate of entry (j,k), both 1-based:
///   a_k (1 - q^{lambda^{(k-1)}_{j-1} - lambda^{(k)}_j})
///       (1 - q^{lambda^{(k)}_j - lambda^{(k)}_{j+1} + 1})
///       / (1 - q^{lambda^{(k)}_j - lambda^{(k-1)}_j + 1}).
/// The first factor blocks an entry sitting on top of its upper-left
/// neighbour; the denominator speeds up an entry aligned with its upper-right
/// neighbour so the rate stays finite and interlacing is preserved.
pub fn gt_rate(p: &GTPattern, j: usize, k: usize, params: &QParams) -> f64 {
    assert!(1 <= j && j <= k && k <= p.depth());
    let q = params.q;
    let x = p.entry(j, k) as f64;
    let block = 1.0 - qpow(q, entry_ext(p, j as i64 - 1, k - 1) - x);
    let push = 1.0 - qpow(q, x - entry_ext(p, j as i64 + 1, k) + 1.0);
    let denom = 1.0 - qpow(q, x - entry_ext(p, j as i64, k - 1) + 1.0);
    params.a[k - 1] * block * push / denom
}

/// Apply the jump of entry (j,k): increment it, then push the same column in
/// each deeper row while it still equals the pre-jump value.
pub fn apply_move(p: &mut GTPattern, j: usize, k: usize) {
    let old = p.entry(j, k);
    p.set_entry(j, k, old + 1);
    for row in k + 1..=p.depth() {
        if p.entry(j, row) == old {
            p.set_entry(j, row, old + 1);
        } else {
            break;
        }
    }
}

/// Pattern of the stationary-boundary initial condition determined by the
/// independent counts Y_1..Y_N: every off-corner entry is 0 and the corners
/// are lambda^{(k)}_k = -(Y_1 + ... + Y_k).
pub fn half_stationary_pattern(ys: &[u32]) -> GTPattern {
    let n = ys.len();
    let mut p = GTPattern::zero(n);
    let mut corner = 0i64;
    for k in 1..=n {
        corner -= ys[k - 1] as i64;
        p.set_entry(k, k, corner);
    }
    p
}

/// Probability of a pattern under the stationary-boundary initial measure
/// with boundary parameter alpha = params.alpha[0] (the remaining alpha slots
/// must be zero for the measure correspondence): off-corner entries vanish
/// and the corner counts Y_k = lambda^{(k-1)}_{k-1} - lambda^{(k)}_k are
/// independent q-Poisson(alpha / a_k).
pub fn initial_pattern_weight(p: &GTPattern, params: &QParams) -> Result<f64, QError> {
    let n = p.depth();
    if n != params.n() {
        return Err(QError::Domain("pattern depth and parameter count differ".into()));
    }
    for k in 2..=n {
        for j in 1..k {
            if p.entry(j, k) != 0 {
                return Ok(0.0);
            }
        }
    }
    let alpha = params.alpha[0];
    let mut w = 1.0;
    let mut corner = 0i64;
    for k in 1..=n {
        let y = corner - p.entry(k, k);
        if y < 0 {
            return Ok(0.0);
        }
        w *= q_poisson_pmf(y as u32, alpha / params.a[k - 1], params.q)?;
        corner = p.entry(k, k);
    }
    Ok(w)
}
