// temp: probe accuracy of V_N near the ladder collision at N = 4
use fredholm::stationary::Stationary;
use qspecial::{qr, Complex64};

fn main() {
    let q = qr(0.5);
    let t = 3.0;
    let zeta = Complex64::new(-1.3, 0.0);
    // balancing-radius invariance at the suspect points
    for a in [0.505, 0.5025, 0.495] {
        for b in [0.0, 0.40, 0.45] {
            let mut st = Stationary::new(q, 4, a, a, t).unwrap();
            if b > 0.0 {
                st.b = b;
            }
            let v = st.v_n(zeta).unwrap();
            println!("a={a:<7} b={:.4} V_N={:+.14}", st.b, v.re);
        }
    }
    // wide sweep for polynomial interpolation
    let aa: Vec<f64> = vec![0.54, 0.53, 0.52, 0.51, 0.505, 0.5025, 0.4975, 0.495, 0.49, 0.48, 0.47, 0.46];
    for &a in &aa {
        let st = Stationary::new(q, 4, a, a, t).unwrap();
        let v = st.v_n(zeta).unwrap();
        println!("sweep a={a:<7} V_N={:+.14}", v.re);
    }
}
