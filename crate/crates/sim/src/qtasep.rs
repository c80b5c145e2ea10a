//! Continuous-time exact simulation (Gillespie) of the particle system with
//! q-geometric slowdown and of the full interlaced-array dynamics.

use qspecial::params::QParams;
use rand::Rng;
use whittaker::dynamics::{apply_move, gt_rate, half_stationary_pattern};
use whittaker::GTPattern;

use crate::sampler::QPoissonSampler;

/// Stationary-boundary initial positions x_k(0) = -k - (Y_1 + ... + Y_k)
/// with independent Y_k ~ q-Poisson(alpha / a_k), where alpha = p.alpha[0] is
/// the single boundary parameter; the gap in front of particle k is exactly
/// Y_k.  (The fixed-time law of these dynamics matches the exact measure
/// whose specialization vector is (alpha, 0, ..., 0).)
pub fn init_positions<R: Rng>(p: &QParams, rng: &mut R) -> Vec<i64> {
    let mut xs = Vec::with_capacity(p.n());
    let mut x = 0i64;
    for k in 0..p.n() {
        let s = QPoissonSampler::new(p.alpha[0] / p.a[k], p.q).expect("sampler");
        x -= 1 + s.sample(rng) as i64;
        xs.push(x);
    }
    xs
}

/// Origin-conditioned stationary start: x_1(0) = 0 and the gap in front of
/// particle k >= 2 is Y_k ~ q-Poisson(alpha / a_k).  With a_1 = alpha the
/// first particle is the stationary Poisson(alpha) boundary walker and the
/// gap process is time-stationary.
pub fn init_positions_origin<R: Rng>(p: &QParams, rng: &mut R) -> Vec<i64> {
    let mut xs = Vec::with_capacity(p.n());
    let mut x = 0i64;
    xs.push(x);
    for k in 1..p.n() {
        let s = QPoissonSampler::new(p.alpha[0] / p.a[k], p.q).expect("sampler");
        x -= 1 + s.sample(rng) as i64;
        xs.push(x);
    }
    xs
}

/// Positions at time p.t started from the origin-conditioned measure.
pub fn run_qtasep_origin<R: Rng>(p: &QParams, rng: &mut R) -> Vec<i64> {
    let mut xs = init_positions_origin(p, rng);
    run_qtasep_from(p, &mut xs, p.t, rng);
    xs
}

/// Evolve positions to time p.t: particle k hops right at rate
/// a_k (1 - q^{x_{k-1} - x_k - 1}), with x_0 = +infty (the first particle is
/// free).  Returns the positions at time p.t.
pub fn run_qtasep<R: Rng>(p: &QParams, rng: &mut R) -> Vec<i64> {
    let mut xs = init_positions(p, rng);
    run_qtasep_from(p, &mut xs, p.t, rng);
    xs
}

/// Evolve the given positions forward by `horizon` time units in place.
pub fn run_qtasep_from<R: Rng>(p: &QParams, xs: &mut [i64], horizon: f64, rng: &mut R) {
    let n = xs.len();
    let q = p.q.value();
    let rate = |xs: &[i64], k: usize| -> f64 {
        if k == 0 {
            p.a[0]
        } else {
            let gap = (xs[k - 1] - xs[k] - 1) as i32;
            p.a[k] * (1.0 - q.powi(gap))
        }
    };
    let mut rates: Vec<f64> = (0..n).map(|k| rate(xs, k)).collect();
    let mut total: f64 = rates.iter().sum();
    let mut time = 0.0;
    loop {
        time += -rng.gen::<f64>().ln() / total;
        if time > horizon {
            return;
        }
        // select the hopping particle
        let mut u = rng.gen::<f64>() * total;
        let mut k = n - 1;
        for (i, r) in rates.iter().enumerate() {
            if u < *r {
                k = i;
                break;
            }
            u -= r;
        }
        xs[k] += 1;
        total -= rates[k];
        rates[k] = rate(xs, k);
        total += rates[k];
        if k + 1 < n {
            total -= rates[k + 1];
            rates[k + 1] = rate(xs, k + 1);
            total += rates[k + 1];
        }
    }
}

/// Evolve the full interlaced array from the stationary-boundary initial
/// measure to time p.t.  All entry rates are recomputed per event, so this is
/// meant for small depth (the array has n(n+1)/2 entries).
pub fn run_gt_dynamics<R: Rng>(p: &QParams, rng: &mut R) -> GTPattern {
    let n = p.n();
    let ys: Vec<u32> = (0..n)
        .map(|k| {
            QPoissonSampler::new(p.alpha[0] / p.a[k], p.q)
                .expect("sampler")
                .sample(rng)
        })
        .collect();
    let mut pat = half_stationary_pattern(&ys);
    let mut time = 0.0;
    loop {
        let mut rates = Vec::with_capacity(n * (n + 1) / 2);
        let mut total = 0.0;
        for k in 1..=n {
            for j in 1..=k {
                let r = gt_rate(&pat, j, k, p);
                rates.push((j, k, r));
                total += r;
            }
        }
        time += -rng.gen::<f64>().ln() / total;
        if time > p.t {
            return pat;
        }
        let mut u = rng.gen::<f64>() * total;
        let mut chosen = rates[rates.len() - 1];
        for &(j, k, r) in &rates {
            if u < r {
                chosen = (j, k, r);
                break;
            }
            u -= r;
        }
        apply_move(&mut pat, chosen.0, chosen.1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qspecial::qr;
    use qspecial::params::QParams;
    use rand::SeedableRng;
    use whittaker::torus::marginal_bottom;

    #[test]
    fn single_free_particle_is_poisson() {
        // with alpha = 0 the first particle starts at -1 and jumps at
        // constant rate a: displacement is Poisson(a t)
        let p = QParams::new(qr(0.5), vec![0.7], vec![0.0], 2.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let runs = 20_000;
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for _ in 0..runs {
            let x = run_qtasep(&p, &mut rng)[0] + 1;
            mean += x as f64;
            m2 += (x * x) as f64;
        }
        mean /= runs as f64;
        m2 /= runs as f64;
        let lam = 0.7 * 2.0;
        let se = (lam / runs as f64).sqrt();
        assert!((mean - lam).abs() < 4.0 * se, "mean {mean} vs {lam}");
        assert!((m2 - mean * mean - lam).abs() < 0.1, "var {}", m2 - mean * mean);
    }

    #[test]
    fn corner_marginal_agrees_between_simulators_and_contour() {
        // at depth 2 the last particle of the chain and the bottom corner of
        // the array must share their law, and both must match the exact
        // contour marginal
        let p = QParams::new(qr(0.5), vec![1.0, 0.9], vec![0.35, 0.0], 0.8).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let runs = 6000;
        let mut chain = std::collections::HashMap::new();
        let mut array = std::collections::HashMap::new();
        for _ in 0..runs {
            // particle labels: lambda_k = x_k + k
            let lam2 = run_qtasep(&p, &mut rng)[1] + 2;
            *chain.entry(lam2).or_insert(0usize) += 1;
            let pat = run_gt_dynamics(&p, &mut rng);
            assert!(pat.interlaced());
            *array.entry(pat.entry(2, 2)).or_insert(0usize) += 1;
        }
        for l in -3i64..=2 {
            let exact = marginal_bottom(l, &p).unwrap();
            let se = (exact * (1.0 - exact) / runs as f64).sqrt().max(1e-4);
            for (name, h) in [("chain", &chain), ("array", &array)] {
                let emp = *h.get(&l).unwrap_or(&0) as f64 / runs as f64;
                assert!(
                    (emp - exact).abs() < 4.5 * se,
                    "{name} l={l}: {emp} vs {exact} (se {se})"
                );
            }
        }
    }

    #[test]
    fn origin_start_single_particle_is_poisson() {
        let p = QParams::new(qr(0.5), vec![0.4], vec![0.4], 2.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let runs = 20_000;
        let mut mean = 0.0;
        for _ in 0..runs {
            mean += run_qtasep_origin(&p, &mut rng)[0] as f64;
        }
        mean /= runs as f64;
        let lam = 0.4 * 2.0;
        let se = (lam / runs as f64).sqrt();
        assert!((mean - lam).abs() < 4.0 * se, "mean {mean} vs {lam}");
    }

    #[test]
    fn origin_start_gap_is_time_stationary() {
        // Burke property: with the rate-alpha boundary walker, the gap in
        // front of particle 2 keeps its q-Poisson(alpha) law at all times
        let q = qr(0.5);
        let alpha = 0.4;
        let p = QParams::new(q, vec![alpha, 1.0], vec![alpha, 0.0], 1.5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let runs = 20_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..runs {
            let xs = run_qtasep_origin(&p, &mut rng);
            *counts.entry(xs[0] - xs[1] - 1).or_insert(0usize) += 1;
        }
        for y in 0i64..=4 {
            let exact = qspecial::poisson::q_poisson_pmf(y as u32, alpha, q).unwrap();
            let emp = *counts.get(&y).unwrap_or(&0) as f64 / runs as f64;
            let se = (exact * (1.0 - exact) / runs as f64).sqrt();
            assert!((emp - exact).abs() < 4.5 * se, "y={y}: {emp} vs {exact}");
        }
    }

    #[test]
    fn positions_stay_ordered() {
        let p = QParams::new(qr(0.4), vec![1.0; 20], vec![0.2; 20], 5.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let xs = run_qtasep(&p, &mut rng);
            assert!(xs.windows(2).all(|w| w[0] > w[1]), "{xs:?}");
        }
    }
}
