//! Seeded fixtures shared by the criterion benches.

use lscsp::families::{horn_cycle, planted_one_in_three, random_instance, Family, Shape};
use lscsp::LsInstance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Horn chain of `n` variables. Every `k < n/2` gives a NO instance, so
/// the whole search tree is explored.
pub fn horn_chain(n: usize, k: usize) -> LsInstance {
    horn_cycle(n, k)
}

pub fn planted(n: usize, k: usize, seed: u64) -> LsInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    planted_one_in_three(&mut rng, n, n, k)
}

/// `count` random instances of one family.
pub fn batch(family: Family, count: usize, seed: u64) -> Vec<LsInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, family, Shape::default())).collect()
}
