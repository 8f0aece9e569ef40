//! Seeded random streams.
//!
//! Every parallel task draws from its own stream keyed by
//! `(master_seed, task_index)`, so results never depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Independent stream `index` under `master_seed`.
pub fn stream(master_seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Single-stream generator for sequential use.
pub fn seeded(seed: u64) -> Rng {
    stream(seed, 0)
}

/// Derive a child seed (splitmix64 finaliser) for nesting stream families.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
