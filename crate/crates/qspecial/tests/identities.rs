//! Identity suite for the q-series layer: binomial-type summations, the
//! alternating convolution identity, and randomized structural properties.

use num_complex::Complex64;
use proptest::prelude::*;
use qspecial::qpoch::{inv_qfact, qpoch_inf, qpoch_n, qpoch_n_re};
use qspecial::theta::theta;
use qspecial::{qr, QReal};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// sum_{n>=0} (a;q)_n/(q;q)_n z^n = (az;q)_inf/(z;q)_inf for |z| < 1.
fn q_binomial_residual(a: Complex64, z: Complex64, q: QReal) -> f64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..=200 {
        sum += qpoch_n(a, q, n) * inv_qfact(q, n) * z.powi(n as i32);
    }
    let rhs = qpoch_inf(a * z, q) / qpoch_inf(z, q);
    (sum - rhs).norm() / rhs.norm()
}

/// sum_{n>=0} (-1)^n q^{n(n-1)/2} z^n/(q;q)_n = (z;q)_inf.
fn q_binomial2_residual(z: Complex64, q: QReal) -> f64 {
    let qv = q.value();
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..=200i32 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * qv.powi(n * (n - 1) / 2) * z.powi(n) * inv_qfact(q, n as i64);
    }
    let rhs = qpoch_inf(z, q);
    (sum - rhs).norm() / rhs.norm().max(1e-30)
}

/// finite alternating sum: sum_k (-1)^k q^{k(k-1)/2} qbinom(l,k) x^k
/// = (1-x)(1-xq)...(1-x q^{l-1}).
fn q_binomial3_residual(x: Complex64, l: u32, q: QReal) -> f64 {
    let qv = q.value();
    let ql = qpoch_n_re(qv, q, l);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..=l {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = ql * inv_qfact(q, k as i64) * inv_qfact(q, (l - k) as i64);
        sum += sign * qv.powi((k * (k.max(1) - 1) / 2) as i32) * coeff * x.powi(k as i32);
    }
    let rhs = qpoch_n(x, q, l as i64);
    (sum - rhs).norm() / rhs.norm().max(1e-30)
}

#[test]
fn q_binomial_identity_random_draws() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let a = c(rng.gen_range(-0.9..0.9), rng.gen_range(-0.5..0.5));
        let z = c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
        let q = qr(rng.gen_range(0.1..0.8));
        let r = q_binomial_residual(a, z, q);
        assert!(r < 1e-11, "residual {r:.3e} at a={a} z={z}");
    }
}

#[test]
fn q_binomial2_identity_random_draws() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let q = qr(rng.gen_range(0.1..0.8));
        let r = q_binomial2_residual(z, q);
        assert!(r < 1e-11, "residual {r:.3e} at z={z}");
    }
}

#[test]
fn q_binomial3_identity() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let x = c(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
        let l = rng.gen_range(0..12u32);
        let q = qr(rng.gen_range(0.1..0.8));
        let r = q_binomial3_residual(x, l, q);
        assert!(r < 1e-10, "residual {r:.3e} at x={x} l={l}");
    }
}

#[test]
fn alternating_convolution_is_delta() {
    // sum_{k=0}^{l} (-1)^k q^{k(k-1)/2} / ((q;q)_k (q;q)_{l-k}) = delta_{l,0}
    let q = qr(0.5);
    let qv = 0.5f64;
    for l in 0..=20u32 {
        let mut s = 0.0;
        for k in 0..=l {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            s += sign
                * qv.powi((k * (k.max(1) - 1) / 2) as i32)
                * inv_qfact(q, k as i64)
                * inv_qfact(q, (l - k) as i64);
        }
        let expect = if l == 0 { 1.0 } else { 0.0 };
        assert!((s - expect).abs() < 1e-12, "l={l}: {s}");
    }
}

proptest! {
    #[test]
    fn qpoch_peeling(re in -0.9f64..0.9, im in -0.5f64..0.5, q in 0.05f64..0.95) {
        // (a;q)_inf = (1-a) (aq;q)_inf
        let a = c(re, im);
        let q = qr(q);
        let lhs = qpoch_inf(a, q);
        let rhs = (Complex64::new(1.0, 0.0) - a) * qpoch_inf(a * q.value(), q);
        prop_assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm().max(1.0));
    }

    #[test]
    fn theta_quasi_periodicity(re in 0.1f64..1.5, im in -0.5f64..0.5, q in 0.05f64..0.9) {
        // theta(qz) = -theta(z)/z
        let z = c(re, im);
        if z.norm() > 0.05 {
            let q = qr(q);
            let lhs = theta(z * q.value(), q);
            let rhs = -theta(z, q) / z;
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }
    }
}
