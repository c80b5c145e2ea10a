//! Charlier polynomials, normalized so that the contour identities used by
//! the Poisson-limit kernel hold exactly:
//!
//!   (1/2 pi i) \oint dv e^{-vt} v^x (v-1)^{-(l+1)} = (t^l e^{-t}/l!) C_l(x;t)
//!
//! (contour around v = 1).  This fixes C_0 = 1, C_1(x;t) = x/t - 1 and
//! generally C_l(x;t) = sum_j binom(l,j) (x)_j (-1)^{l-j} t^{-j} with (x)_j
//! the falling factorial.

/// C_l(x;t) for integer x (x may be negative).
pub fn charlier(l: u32, x: i64, t: f64) -> f64 {
    assert!(t > 0.0);
    let mut sum = 0.0;
    let mut binom = 1.0; // binom(l, j)
    let mut fall = 1.0; // (x)_j falling factorial
    let mut tp = 1.0; // t^{-j}
    for j in 0..=l {
        let sign = if (l - j) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * fall * tp;
        // advance to j+1
        binom *= (l - j) as f64 / (j + 1) as f64;
        fall *= (x - j as i64) as f64;
        tp /= t;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn degree_zero_is_one() {
        for x in [-7i64, 0, 3] {
            assert_eq!(charlier(0, x, 1.7), 1.0);
        }
    }

    #[test]
    fn degree_one() {
        assert_relative_eq!(charlier(1, 3, 2.0), 0.5, epsilon = 1e-14);
        assert_relative_eq!(charlier(1, -1, 0.5), -3.0, epsilon = 1e-14);
    }

    #[test]
    fn poisson_orthogonality() {
        // sum_x t^x e^{-t}/x! C_m(x;t) C_n(x;t) = n! t^{-n} delta_{mn}
        let t = 1.0;
        for m in 0..4u32 {
            for n in 0..4u32 {
                let mut s = 0.0;
                let mut w = (-t as f64).exp();
                for x in 0..80i64 {
                    if x > 0 {
                        w *= t / x as f64;
                    }
                    s += w * charlier(m, x, t) * charlier(n, x, t);
                }
                let expect = if m == n {
                    (1..=n as u64).product::<u64>() as f64 * t.powi(-(n as i32))
                } else {
                    0.0
                };
                assert!((s - expect).abs() < 1e-10, "m={m} n={n}: {s} vs {expect}");
            }
        }
    }

    #[test]
    fn contour_identity() {
        // direct residue evaluation of the defining contour integral
        use crate::quad::Circle;
        use crate::Complex64;
        let t = 1.0;
        let circle = Circle::new(Complex64::new(1.0, 0.0), 0.5, 128);
        for l in 0..5u32 {
            for x in [-4i64, -3, 0, 2] {
                let v = circle.integrate(|v| {
                    (-v * t).exp() * v.powi(x as i32) / (v - 1.0).powi(l as i32 + 1)
                });
                let fact: f64 = (1..=l as u64).product::<u64>() as f64;
                let expect = t.powi(l as i32) * (-t).exp() / fact * charlier(l, x, t);
                assert!(
                    (v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12,
                    "l={l} x={x}: {} vs {expect}",
                    v.re
                );
            }
        }
    }
}
