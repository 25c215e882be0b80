//! Seeded randomness. Every stochastic step in the crate takes an explicit `u64` seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rand::Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-trial seed for shared-nothing fan-out: trial `i` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed.wrapping_add(trial)
}
