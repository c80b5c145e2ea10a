//! q-Pochhammer symbols (a;q)_inf and (a;q)_n for n in Z.

use crate::{Complex64, QReal};

const EPS: f64 = 1e-17;

/// Number of factors needed so the dropped tail of (a;q)_inf is below EPS.
fn trunc_len(abs_a: f64, q: f64) -> usize {
    if abs_a <= EPS {
        return 8;
    }
    let n = ((EPS / abs_a).ln() / q.ln()).ceil();
    (n.max(0.0) as usize) + 8
}

/// (a;q)_inf = prod_{n>=0} (1 - a q^n), truncated by the geometric tail bound.
pub fn qpoch_inf(a: Complex64, q: QReal) -> Complex64 {
    let q = q.value();
    let n = trunc_len(a.norm(), q);
    let mut prod = Complex64::new(1.0, 0.0);
    let mut aq = a;
    for _ in 0..n {
        prod *= Complex64::new(1.0, 0.0) - aq;
        aq *= q;
    }
    prod
}

/// Real-argument convenience for qpoch_inf.
pub fn qpoch_inf_re(a: f64, q: QReal) -> f64 {
    let q = q.value();
    let n = trunc_len(a.abs(), q);
    let mut prod = 1.0;
    let mut aq = a;
    for _ in 0..n {
        prod *= 1.0 - aq;
        aq *= q;
    }
    prod
}

/// (a;q)_n for n in Z.
///
/// For n >= 0 this is the finite product prod_{k=0}^{n-1}(1 - a q^k).
/// For n < 0 it is 1 / prod_{k=1}^{-n}(1 - a q^{-k}); if a factor vanishes
/// exactly the result is infinite (see `inv_qpoch_n` for the reciprocal-zero
/// convention).
pub fn qpoch_n(a: Complex64, q: QReal, n: i64) -> Complex64 {
    let q = q.value();
    let one = Complex64::new(1.0, 0.0);
    if n >= 0 {
        let mut prod = one;
        let mut aq = a;
        for _ in 0..n {
            prod *= one - aq;
            aq *= q;
        }
        prod
    } else {
        let mut denom = one;
        let mut aq = a;
        for _ in 0..(-n) {
            aq /= q;
            denom *= one - aq;
        }
        if denom.norm() == 0.0 {
            Complex64::new(f64::INFINITY, 0.0)
        } else {
            one / denom
        }
    }
}

/// 1 / (a;q)_n with the reciprocal-zero convention: when (a;q)_n is infinite
/// (a vanishing factor in the denominator of the negative-n case) the
/// reciprocal is exactly 0.  In particular 1/(q;q)_m = 0 for all m <= -1.
pub fn inv_qpoch_n(a: Complex64, q: QReal, n: i64) -> Complex64 {
    let denom = qpoch_n(a, q, n);
    if !denom.re.is_finite() || !denom.im.is_finite() {
        return Complex64::new(0.0, 0.0);
    }
    if denom.norm() == 0.0 {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    1.0 / denom
}

/// Real-argument (a;q)_n for n >= 0.
pub fn qpoch_n_re(a: f64, q: QReal, n: u32) -> f64 {
    let q = q.value();
    let mut prod = 1.0;
    let mut aq = a;
    for _ in 0..n {
        prod *= 1.0 - aq;
        aq *= q;
    }
    prod
}

/// log of (-q^e; q)_inf = sum_{j>=0} log(1 + q^{e+j}), stable for any real
/// exponent e (including very negative e, where the direct product overflows).
pub fn ln_qpoch_inf_neg_exp(e: f64, q: QReal) -> f64 {
    let lq = q.value().ln();
    let mut s = 0.0;
    let mut j = 0.0;
    loop {
        let x = (e + j) * lq;
        if x < (1e-18f64).ln() {
            break;
        }
        s += if x > 30.0 { x } else { x.exp().ln_1p() };
        j += 1.0;
        if j > 1e6 {
            break;
        }
    }
    s
}

/// 1/(q;q)_m on integer m with the reciprocal-zero convention (0 for m < 0).
pub fn inv_qfact(q: QReal, m: i64) -> f64 {
    if m < 0 {
        0.0
    } else {
        1.0 / qpoch_n_re(q.value(), q, m as u32)
    }
}
