//! Limiting distributions: the Airy-kernel Fredholm determinant (GUE
//! Tracy-Widom F_2) and the one-parameter stationary family F_omega, built
//! from F_2, exponential-Airy cross integrals and an Airy-resolvent term.

use qspecial::airy::airy_ai;
use qspecial::quad::gauss_legendre;
use qspecial::QError;

/// Length scale of the tangent change of variables mapping (s, infinity) to
/// the unit interval.
const MAP_SCALE: f64 = 4.0;

/// Composite Gauss-Legendre rule over [a, b]: panels of unit length, 16
/// nodes each, resolves the Airy oscillation (period >~ 1 on [-10, 0]) to
/// near machine precision.
fn integrate_panels<F: Fn(f64) -> f64>(a: f64, b: f64, f: F) -> f64 {
    if b <= a {
        return 0.0;
    }
    let panels = ((b - a).ceil() as usize).max(1);
    let (x, w) = gauss_legendre(16);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            sum += wi * f(mid + 0.5 * h * xi);
        }
    }
    0.5 * h * sum
}

/// Smallest T with envelope(x0 + T) * e^{growth T} below 1e-20, where the
/// envelope bounds |Ai|; certifies tail truncation of the semi-infinite
/// Airy integrals.
fn tail_cutoff(x0: f64, growth: f64) -> f64 {
    let env = |u: f64| -> f64 {
        if u > 1.0 {
            -(2.0 / 3.0) * u.powf(1.5)
        } else {
            0.0
        }
    };
    let mut t = 1.0;
    while env(x0 + t) + growth * t > -46.0 && t < 400.0 {
        t += 1.0;
    }
    t
}

/// Airy kernel K(xi, zeta) = int_0^infty Ai(xi + l) Ai(zeta + l) dl.
pub fn airy_kernel(xi: f64, zeta: f64) -> f64 {
    let t = tail_cutoff(xi.min(zeta), 0.0);
    integrate_panels(0.0, t, |l| airy_ai(xi + l) * airy_ai(zeta + l))
}

/// Nystrom discretization of L^2(s, infinity): Gauss-Legendre nodes pushed
/// through u = s + L tan(pi v / 2), v in (0, 1), with the Jacobian absorbed
/// into the weights.  The Airy-kernel operators decay superexponentially, so
/// the far nodes carry no mass despite their large weights.
pub struct NystromGrid {
    pub s: f64,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
}

impl NystromGrid {
    pub fn new(s: f64, n_nodes: usize) -> Self {
        assert!(n_nodes >= 40, "need at least 40 quadrature nodes");
        let (x, gw) = gauss_legendre(n_nodes);
        let mut u = Vec::with_capacity(n_nodes);
        let mut w = Vec::with_capacity(n_nodes);
        for (xi, wi) in x.iter().zip(&gw) {
            let v = 0.5 * (xi + 1.0);
            let t = (std::f64::consts::FRAC_PI_2 * v).tan();
            u.push(s + MAP_SCALE * t);
            // dv-weight wi/2 times du/dv = L (pi/2) sec^2
            w.push(0.5 * wi * MAP_SCALE * std::f64::consts::FRAC_PI_2 * (1.0 + t * t));
        }
        NystromGrid { s, u, w }
    }

    fn len(&self) -> usize {
        self.u.len()
    }
}

/// Airy-kernel matrix on the grid nodes through the square-root
/// factorization K = B B^T with B(u, l) = Ai(u + l) sqrt(mu_l): positive
/// semidefinite by construction and one Airy evaluation per (node, l) pair.
fn kernel_matrix(grid: &NystromGrid) -> Vec<Vec<f64>> {
    let t = tail_cutoff(grid.s, 0.0);
    let panels = (t.ceil() as usize).max(1);
    let (x, gw) = gauss_legendre(16);
    let h = t / panels as f64;
    let mut lam = Vec::with_capacity(panels * 16);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&gw) {
            lam.push((mid + 0.5 * h * xi, (0.5 * h * wi).sqrt()));
        }
    }
    let n = grid.len();
    let b: Vec<Vec<f64>> = (0..n)
        .map(|i| lam.iter().map(|&(l, sw)| airy_ai(grid.u[i] + l) * sw).collect())
        .collect();
    let mut k = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let kij: f64 = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
            k[i][j] = kij;
            k[j][i] = kij;
        }
    }
    k
}

/// Dense real LU with partial pivoting (determinant and solve).
struct Lu {
    a: Vec<Vec<f64>>,
    piv: Vec<usize>,
    sign: f64,
}

impl Lu {
    fn new(mut a: Vec<Vec<f64>>) -> Result<Self, QError> {
        let n = a.len();
        let mut piv = Vec::with_capacity(n);
        let mut sign = 1.0;
        for k in 0..n {
            let (p, m) = (k..n)
                .map(|i| (i, a[i][k].abs()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if m < 1e-300 {
                return Err(QError::Convergence("singular Nystrom matrix".into()));
            }
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            piv.push(p);
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                a[i][k] = f;
                for j in k + 1..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        Ok(Lu { a, piv, sign })
    }

    fn det(&self) -> f64 {
        self.a.iter().enumerate().fold(self.sign, |d, (i, row)| d * row[i])
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = rhs.len();
        let mut y = rhs.to_vec();
        for k in 0..n {
            y.swap(k, self.piv[k]);
            for i in k + 1..n {
                y[i] -= self.a[i][k] * y[k];
            }
        }
        for k in (0..n).rev() {
            for j in k + 1..n {
                y[k] -= self.a[k][j] * y[j];
            }
            y[k] /= self.a[k][k];
        }
        y
    }
}

fn f2_from_kernel(grid: &NystromGrid, k: &[Vec<f64>]) -> Result<f64, QError> {
    let n = grid.len();
    let m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { 1.0 } else { 0.0 };
                    d - (grid.w[i] * grid.w[j]).sqrt() * k[i][j]
                })
                .collect()
        })
        .collect();
    Lu::new(m).map(|lu| lu.det())
}

/// GUE Tracy-Widom distribution F_2(s) = det(1 - K)|_{L^2(s, infinity)} on
/// the given grid (whose left endpoint is s).
pub fn tracy_widom_f2(grid: &NystromGrid) -> Result<f64, QError> {
    assert!(grid.s >= -10.0, "left endpoint below the supported range");
    f2_from_kernel(grid, &kernel_matrix(grid))
}

/// F_2(s) on a fresh grid with the given node count.
pub fn tracy_widom_f2_at(s: f64, n_nodes: usize) -> Result<f64, QError> {
    tracy_widom_f2(&NystromGrid::new(s, n_nodes))
}

/// Exponential factor B_omega^(1)(xi) = e^{omega^3/3 - omega xi}.
pub fn b_omega_1(omega: f64, xi: f64) -> f64 {
    (omega * omega * omega / 3.0 - omega * xi).exp()
}

/// Exponential-Airy tail B_omega^(2)(xi) = -int_0^infty e^{omega z}
/// Ai(xi + z) dz; converges for every omega by superexponential Airy decay.
pub fn b_omega_2(omega: f64, xi: f64) -> f64 {
    let t = tail_cutoff(xi, omega);
    -integrate_panels(0.0, t, |z| exp_times(omega * z, airy_ai(xi + z)))
}

/// e^p * a with the underflowed-Airy case short-circuited so that a huge
/// exponential never multiplies a zero (inf * 0 = NaN).
fn exp_times(p: f64, a: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        p.exp() * a
    }
}

/// B_omega = B_omega^(1) + B_omega^(2).
pub fn b_omega(omega: f64, xi: f64) -> f64 {
    b_omega_1(omega, xi) + b_omega_2(omega, xi)
}

/// B_omega^(1) for grid sums: past the float overflow horizon (exponent
/// beyond ~700) every Airy factor it multiplies has long underflowed to
/// zero, so the node value is zero rather than infinity.
fn b1_guarded(omega: f64, xi: f64) -> f64 {
    let e = omega * omega * omega / 3.0 - omega * xi;
    if e > 690.0 {
        0.0
    } else {
        e.exp()
    }
}

/// int_xi^infty e^{c y} Ai(y) dy: the overflow-free form of the products
/// B_omega^(1) B_{-omega}^(2) appearing in the cross integrals.
fn exp_airy_tail(c: f64, xi: f64) -> f64 {
    let t = tail_cutoff(xi, c);
    integrate_panels(0.0, t, |z| exp_times(c * (xi + z), airy_ai(xi + z)))
}

/// The ingredients of the stationary limit law at a fixed left endpoint s:
/// F_2(s), the three cross integrals int_s^infty B_omega^(i) B_{-omega}^(j)
/// for (i,j) != (1,1), and the resolvent term
/// int_s^infty (rho A B_omega) B_{-omega} with rho = (1 - A)^{-1}.
pub struct BRComponents {
    pub f2: f64,
    pub cross_12: f64,
    pub cross_21: f64,
    pub cross_22: f64,
    pub resolvent: f64,
}

impl BRComponents {
    pub fn compute(omega: f64, grid: &NystromGrid) -> Result<Self, QError> {
        // half a unit of slack so finite-difference stencils centered at -8
        // stay evaluable
        assert!(grid.s >= -8.5, "resolvent solve supported for s >= -8");
        let n = grid.len();
        let k = kernel_matrix(grid);
        let f2 = f2_from_kernel(grid, &k)?;

        // cross integrals; the (1, j) and (i, 1) products are folded into a
        // single integrand so no exponential factor is ever formed alone
        let w3 = omega * omega * omega / 3.0;
        let cross_12 = -w3.exp()
            * grid.u.iter().zip(&grid.w).map(|(&u, &w)| w * exp_airy_tail(-omega, u)).sum::<f64>();
        let cross_21 = -(-w3).exp()
            * grid.u.iter().zip(&grid.w).map(|(&u, &w)| w * exp_airy_tail(omega, u)).sum::<f64>();
        let cross_22 = grid
            .u
            .iter()
            .zip(&grid.w)
            .map(|(&u, &w)| w * b_omega_2(omega, u) * b_omega_2(-omega, u))
            .sum::<f64>();

        // resolvent term: solve (1 - A) y = A B_omega, then pair with
        // B_{-omega}; A_ij = K(u_i, u_j) w_j
        let bw: Vec<f64> = grid.u.iter().map(|&u| b1_guarded(omega, u) + b_omega_2(omega, u)).collect();
        let bm: Vec<f64> = grid.u.iter().map(|&u| b1_guarded(-omega, u) + b_omega_2(-omega, u)).collect();
        let ab: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| k[i][j] * grid.w[j] * bw[j]).sum())
            .collect();
        let m: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = if i == j { 1.0 } else { 0.0 };
                        d - k[i][j] * grid.w[j]
                    })
                    .collect()
            })
            .collect();
        let y = Lu::new(m)?.solve(&ab);
        let resolvent = (0..n).map(|i| grid.w[i] * y[i] * bm[i]).sum::<f64>();

        Ok(BRComponents { f2, cross_12, cross_21, cross_22, resolvent })
    }

    /// nu_omega(s) assembled from the components.
    pub fn nu(&self, s: f64, omega: f64) -> f64 {
        self.f2
            * (s - omega * omega
                - (self.cross_12 + self.cross_21 + self.cross_22)
                - self.resolvent)
    }
}

/// nu_omega(s) = F_2(s) (s - omega^2 - cross integrals - resolvent term).
pub fn baik_rains_nu(s: f64, omega: f64, n_nodes: usize) -> Result<f64, QError> {
    let grid = NystromGrid::new(s, n_nodes);
    Ok(BRComponents::compute(omega, &grid)?.nu(s, omega))
}

/// The stationary limit distribution F_omega(s) = d nu_omega / ds, by
/// Richardson-extrapolated central differences (steps h and h/2) with the
/// result clamped to [0, 1].  Errs when the two difference quotients
/// disagree by more than 1e-5 (derivative instability).
pub fn baik_rains_f(s: f64, omega: f64, n_nodes: usize, h: f64) -> Result<f64, QError> {
    let d = |hh: f64| -> Result<f64, QError> {
        Ok((baik_rains_nu(s + hh, omega, n_nodes)? - baik_rains_nu(s - hh, omega, n_nodes)?)
            / (2.0 * hh))
    };
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    if (d2 - d1).abs() > 1e-5 {
        return Err(QError::Convergence(format!(
            "derivative unstable at s = {s}: steps {h} and {} differ by {:.2e}",
            0.5 * h,
            (d2 - d1).abs()
        )));
    }
    Ok(((4.0 * d2 - d1) / 3.0).clamp(0.0, 1.0))
}
