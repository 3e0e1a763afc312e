//! Seeded random streams.
//!
//! Every random draw in the crate goes through [`stream`], so the same seed
//! reproduces the same bits on every platform. Independent sub-streams for
//! trials or restarts are derived with [`substream`], which mixes the parent
//! seed with the stream index instead of sharing one generator.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub type SeededRng = ChaCha12Rng;

pub fn stream(seed: u64) -> SeededRng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Generator for stream `index` split off from `seed`.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    stream(splitmix64(seed ^ splitmix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15))))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
