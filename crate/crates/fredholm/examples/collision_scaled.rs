// temp: condition of V_N / det near the ladder collision at KPZ-scaled time
use fredholm::stationary::Stationary;
use qspecial::{qr, Complex64};
use scaling::{scaled_parameters, ScalingPoint};

fn main() {
    let q = qr(0.5);
    let point = ScalingPoint::new(q, 1.0, 0.0, 0.0);
    for nn in [4u64, 8, 16] {
        let sp = scaled_parameters(&point, nn).unwrap();
        let zeta = Complex64::new(-q.value().powf(-sp.zeta_exponent), 0.0);
        println!(
            "N={nn} t={:.4} zeta={:.4e} alpha_N={}",
            sp.t_n, zeta.re, sp.alpha_n
        );
        for a in [0.505, 0.5025, 0.5, 0.4975, 0.495] {
            for b in [0.0, 0.40, 0.45] {
                let mut st = Stationary::new(q, nn as usize, a, a, sp.t_n).unwrap();
                if b > 0.0 {
                    st.b = b;
                }
                match (st.v_n(zeta), st.det_kred(zeta)) {
                    (Ok(v), Ok(d)) => println!(
                        "  a={a:<7} b={:.4} V_N={:+.14e}  det={:+.14}",
                        st.b, v.re, d.re
                    ),
                    (v, d) => println!("  a={a:<7} b={:.4} err {v:?} {d:?}", st.b),
                }
            }
        }
    }
}
