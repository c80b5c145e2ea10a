//! Shared quadrature utilities: Gauss-Legendre rules and the trapezoid rule
//! on circular contours (spectrally accurate for analytic integrands).

use crate::Complex64;

/// Gauss-Legendre nodes and weights on [-1,1], computed by Newton iteration
/// on the Legendre polynomial roots.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrate f over [a,b] with an n-node Gauss-Legendre rule.
pub fn integrate_gl<F: FnMut(f64) -> f64>(a: f64, b: f64, n: usize, mut f: F) -> f64 {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        sum += wi * f(mid + c * xi);
    }
    c * sum
}

/// Complex-valued Gauss-Legendre integral over a real interval.
pub fn integrate_gl_c<F: FnMut(f64) -> Complex64>(
    a: f64,
    b: f64,
    n: usize,
    mut f: F,
) -> Complex64 {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = Complex64::new(0.0, 0.0);
    for (xi, wi) in x.iter().zip(&w) {
        sum += f(mid + c * xi) * *wi;
    }
    sum * c
}

/// A circular contour with a trapezoid-rule node count.
#[derive(Debug, Clone, Copy)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Circle {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Self {
        assert!(radius > 0.0 && nodes >= 16 && nodes % 2 == 0);
        Circle { center, radius, nodes }
    }

    /// (1/2 pi i) * closed contour integral of f, counterclockwise.
    pub fn integrate<F: FnMut(Complex64) -> Complex64>(&self, mut f: F) -> Complex64 {
        let m = self.nodes;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..m {
            let th = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            let e = Complex64::new(0.0, th).exp();
            let z = self.center + self.radius * e;
            sum += f(z) * e;
        }
        sum * self.radius / m as f64
    }
}
