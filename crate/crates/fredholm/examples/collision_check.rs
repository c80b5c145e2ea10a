// temp: validate the merged-ladder-pole convention by continuity of G
// through a = q (where the ladder point a/q lands on the pole at 1)
use fredholm::stationary::Stationary;
use qspecial::qpoch::qpoch_inf;
use qspecial::{qr, Complex64};
use qspecial::params::QParams;
use whittaker::torus::marginal_bottom;

fn main() {
    let q = qr(0.5);
    let alpha = 0.3;
    let t = 1.5;
    let zeta = Complex64::new(-1.3, 0.0);
    for a in [0.52, 0.51, 0.505, 0.5, 0.495, 0.49] {
        let st = Stationary::new(q, 2, a, alpha, t).unwrap();
        let g = st.g(zeta).unwrap();
        // oracle: sum the transform over the exact torus marginal of lambda_2
        let p = QParams::new(q, vec![1.0, a], vec![alpha, 0.0], t).unwrap();
        let mut oracle = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for l in -16i64..=10 {
            let pm = match marginal_bottom(l, &p) {
                Ok(v) => v,
                Err(_) => continue, // deep-tail quadrature; term negligible
            };
            mass += pm;
            oracle += pm / qpoch_inf(zeta * q.value().powi(l as i32), q);
        }
        println!(
            "a={a:<6} g={:+.12}  oracle={:+.12}  mass={:.12}  diff={:.3e}",
            g.re,
            oracle.re,
            mass,
            (g.re - oracle.re).abs()
        );
    }
    // same check at the stationary collision point alpha = a = q
    for a in [0.52, 0.51, 0.505, 0.5, 0.495, 0.49] {
        let st = Stationary::new(q, 2, a, a, t).unwrap();
        let v = st.v_n(zeta).unwrap();
        let d = st.det_kred(zeta).unwrap();
        println!("alpha=a={a:<6} V_N={:+.12}  det={:+.12}", v.re, d.re);
    }
    // V_N self-consistency at N = 4 with a larger window in t
    for a in [0.51, 0.505, 0.5, 0.495, 0.49] {
        let st = Stationary::new(q, 4, a, a, 3.0).unwrap();
        let v = st.v_n(zeta).unwrap();
        let d = st.det_kred(zeta).unwrap();
        println!("N=4 alpha=a={a:<6} V_N={:+.12}  det={:+.12}", v.re, d.re);
    }
}
