//! q-Gamma function and the q-digamma function with its first two derivatives.

use crate::qpoch::qpoch_inf_re;
use crate::{QError, QReal};

/// Gamma_q(x) = (1-q)^{1-x} (q;q)_inf / (q^x;q)_inf.
pub fn q_gamma(x: f64, q: QReal) -> Result<f64, QError> {
    let qv = q.value();
    let qx = qv.powf(x);
    let denom = qpoch_inf_re(qx, q);
    if denom.abs() < 1e-250 {
        return Err(QError::Pole(format!("Gamma_q pole near x = {x}")));
    }
    Ok((1.0 - qv).powf(1.0 - x) * qpoch_inf_re(qv, q) / denom)
}

/// Phi_q(x) = d/dx log Gamma_q(x) = -log(1-q) + log q * sum_{n>=0} u/(1-u),
/// u = q^{x+n}.  Requires x > 0.
pub fn q_digamma(x: f64, q: QReal) -> f64 {
    let qv = q.value();
    assert!(x > 0.0, "q_digamma series requires x > 0");
    let lq = qv.ln();
    let mut sum = 0.0;
    let mut u = qv.powf(x);
    while u > 1e-18 {
        sum += u / (1.0 - u);
        u *= qv;
    }
    -(1.0 - qv).ln() + lq * sum
}

/// Phi_q'(x) = (log q)^2 sum_{n>=0} u/(1-u)^2, u = q^{x+n}.
pub fn q_digamma_prime(x: f64, q: QReal) -> f64 {
    let qv = q.value();
    assert!(x > 0.0);
    let lq = qv.ln();
    let mut sum = 0.0;
    let mut u = qv.powf(x);
    while u > 1e-18 {
        let d = 1.0 - u;
        sum += u / (d * d);
        u *= qv;
    }
    lq * lq * sum
}

/// Phi_q''(x) = (log q)^3 sum_{n>=0} u(1+u)/(1-u)^3, u = q^{x+n}.
pub fn q_digamma_double_prime(x: f64, q: QReal) -> f64 {
    let qv = q.value();
    assert!(x > 0.0);
    let lq = qv.ln();
    let mut sum = 0.0;
    let mut u = qv.powf(x);
    while u > 1e-18 {
        let d = 1.0 - u;
        sum += u * (1.0 + u) / (d * d * d);
        u *= qv;
    }
    lq * lq * lq * sum
}
