// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded random streams. Every random draw in the crate comes from a
//! ChaCha stream addressed by `(seed, stream index)`, so results do not
//! depend on how work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Odd 64-bit constant used to spread layer indices across seed space.
pub const SUBSTREAM_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed for an independent per-layer (or per-item) substream.
pub fn substream_seed(base_seed: u64, index: u64) -> u64 {
    base_seed ^ index.wrapping_mul(SUBSTREAM_MIX)
}

/// Generator for draw number `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
