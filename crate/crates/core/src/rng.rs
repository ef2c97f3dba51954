//! Seeded random streams.
//!
//! Every generator and randomized algorithm draws from ChaCha8. A master seed
//! selects the key and an index (repetition, sample) selects the stream, so
//! per-index results do not depend on evaluation order.

use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Generator for the `index`-th stream under `seed`.
pub fn stream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A fresh 64-bit seed for the `index`-th child of `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    stream(seed, index).next_u64()
}

/// Uniform `k`-subset of `0..m`, sorted, drawn from the `index`-th stream.
pub fn sample_subset(seed: u64, index: u64, m: usize, k: usize) -> Vec<usize> {
    let mut rng = stream(seed, index);
    let mut subset = rand::seq::index::sample(&mut rng, m, k).into_vec();
    subset.sort_unstable();
    subset
}
