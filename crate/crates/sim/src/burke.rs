//! Zero-range formulation on a finite segment with a Poisson boundary
//! source: in equilibrium the departure process from the far end is again
//! Poisson with the input rate, and site occupations stay q-geometric.

use qspecial::QReal;
use rand::Rng;

use crate::sampler::QPoissonSampler;

#[derive(Debug, Clone)]
pub struct ZeroRangeRecord {
    /// departure times from the last site, in order
    pub departures: Vec<f64>,
    /// occupations at the end of the run
    pub final_occupations: Vec<u32>,
}

/// Simulate `sites` zero-range sites with unit rate parameter: site i holding
/// eta_i particles fires at rate 1 - q^{eta_i}, sending one particle to site
/// i+1 (or out at the last site); site 1 receives a Poisson(alpha) input.
/// Initial occupations are independent q-Poisson(alpha).
pub fn run_zero_range<R: Rng>(
    alpha: f64,
    q: QReal,
    sites: usize,
    horizon: f64,
    rng: &mut R,
) -> ZeroRangeRecord {
    let qv = q.value();
    let sampler = QPoissonSampler::new(alpha, q).expect("sampler");
    let mut eta: Vec<u32> = (0..sites).map(|_| sampler.sample(rng)).collect();
    let mut rates: Vec<f64> = eta.iter().map(|&n| 1.0 - qv.powi(n as i32)).collect();
    let mut total: f64 = alpha + rates.iter().sum::<f64>();
    let mut time = 0.0;
    let mut departures = Vec::new();
    loop {
        time += -rng.gen::<f64>().ln() / total;
        if time > horizon {
            return ZeroRangeRecord { departures, final_occupations: eta };
        }
        let mut u = rng.gen::<f64>() * total;
        if u < alpha {
            // boundary arrival at site 1
            eta[0] += 1;
            total -= rates[0];
            rates[0] = 1.0 - qv.powi(eta[0] as i32);
            total += rates[0];
            continue;
        }
        u -= alpha;
        let mut site = sites - 1;
        for (i, r) in rates.iter().enumerate() {
            if u < *r {
                site = i;
                break;
            }
            u -= r;
        }
        eta[site] -= 1;
        total -= rates[site];
        rates[site] = 1.0 - qv.powi(eta[site] as i32);
        total += rates[site];
        if site + 1 < sites {
            eta[site + 1] += 1;
            total -= rates[site + 1];
            rates[site + 1] = 1.0 - qv.powi(eta[site + 1] as i32);
            total += rates[site + 1];
        } else {
            departures.push(time);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qspecial::poisson::q_poisson_pmf;
    use qspecial::qr;
    use rand::SeedableRng;

    #[test]
    fn output_process_is_poisson_with_input_rate() {
        let alpha = 0.4;
        let q = qr(0.5);
        let horizon = 6000.0;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let rec = run_zero_range(alpha, q, 8, horizon, &mut rng);
        let n = rec.departures.len() as f64;
        let expect = alpha * horizon;
        assert!(
            (n - expect).abs() < 4.0 * expect.sqrt(),
            "{n} departures vs {expect}"
        );
        // interarrival times exponential(alpha): probability-integral
        // transform then a one-sample KS test against the uniform law
        let mut u: Vec<f64> = rec
            .departures
            .windows(2)
            .map(|w| 1.0 - (-alpha * (w[1] - w[0])).exp())
            .collect();
        u.sort_by(f64::total_cmp);
        let m = u.len() as f64;
        let mut d: f64 = 0.0;
        for (i, &x) in u.iter().enumerate() {
            d = d.max((x - i as f64 / m).abs()).max(((i + 1) as f64 / m - x).abs());
        }
        // 0.1% critical value ~ 1.95/sqrt(m)
        assert!(d < 1.95 / m.sqrt(), "KS {d} with {m} samples");
    }

    #[test]
    fn occupations_stay_in_equilibrium() {
        // average over sites and repeats: mean occupation should match the
        // q-geometric stationary profile
        let alpha = 0.4;
        let q = qr(0.5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut sum = 0.0;
        let mut count = 0.0;
        for _ in 0..150 {
            let rec = run_zero_range(alpha, q, 6, 40.0, &mut rng);
            sum += rec.final_occupations.iter().map(|&x| x as f64).sum::<f64>();
            count += rec.final_occupations.len() as f64;
        }
        let mean = sum / count;
        let exact: f64 = (0..60u32)
            .map(|k| k as f64 * q_poisson_pmf(k, alpha, q).unwrap())
            .sum();
        let var: f64 = (0..60u32)
            .map(|k| (k as f64 - exact).powi(2) * q_poisson_pmf(k, alpha, q).unwrap())
            .sum();
        // occupations are correlated across sites; allow a generous margin
        assert!(
            (mean - exact).abs() < 8.0 * (var / count).sqrt(),
            "mean occupation {mean} vs {exact}"
        );
    }
}
