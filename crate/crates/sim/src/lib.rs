//! Exact continuous-time simulation: the interacting particle system with
//! q-geometric slowdown, the full interlaced-array dynamics, and the
//! zero-range formulation with a boundary source.  All samplers are seeded
//! and reproducible (ChaCha8 streams).

pub mod burke;
pub mod observables;
pub mod qtasep;
pub mod sampler;

pub use burke::{run_zero_range, ZeroRangeRecord};
pub use observables::{empirical_qlaplace, ks_statistic, scaled_position};
pub use qtasep::{init_positions, run_gt_dynamics, run_qtasep};
pub use sampler::QPoissonSampler;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent reproducible stream: one RNG per (seed, trajectory index).
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
