//! Deterministic per-trial random streams.
//!
//! Every stochastic routine takes its randomness from a ChaCha stream derived
//! from `(master_seed, block, trial)`. Trials therefore produce identical
//! results whether they run serially or on any number of worker threads, and
//! a report is reproducible from its seed alone.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Trial indices occupy the low bits of the stream id; block ids (scenario
/// position inside a sweep) the high bits.
const BLOCK_SHIFT: u32 = 40;

/// Independent generator for one trial.
///
/// `trial` must stay below 2^40 and `block` below 2^24 so streams never
/// collide.
pub fn trial_rng(master_seed: u64, block: u64, trial: u64) -> ChaCha8Rng {
    debug_assert!(trial < 1 << BLOCK_SHIFT);
    debug_assert!(block < 1 << (64 - BLOCK_SHIFT));
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream((block << BLOCK_SHIFT) | trial);
    rng
}
