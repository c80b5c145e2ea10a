use qspecial::params::QParams;
use qspecial::qr;
use rand::SeedableRng;
use whittaker::torus::marginal_bottom;

fn main() {
    let p = QParams::new(qr(0.5), vec![1.0, 0.9], vec![0.35, 0.0], 0.8).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let runs = 20000;
    let mut chain = std::collections::HashMap::new();
    let mut array = std::collections::HashMap::new();
    for _ in 0..runs {
        let lam2 = sim::run_qtasep(&p, &mut rng)[1] + 2;
        *chain.entry(lam2).or_insert(0.0) += 1.0 / runs as f64;
        let pat = sim::run_gt_dynamics(&p, &mut rng);
        *array.entry(pat.entry(2, 2)).or_insert(0.0) += 1.0 / runs as f64;
    }
    for l in -6i64..=3 {
        let m = marginal_bottom(l, &p).unwrap();
        println!(
            "l={l:3}  contour {m:.5}  chain {:.5}  array {:.5}",
            chain.get(&l).unwrap_or(&0.0),
            array.get(&l).unwrap_or(&0.0)
        );
    }
}
