//! Deterministic per-trial random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// RNG for trial `index` of stream `stream` under `seed`. Trials are
/// independent of the order and thread they run on.
pub fn trial_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut state = seed ^ stream.rotate_left(32) ^ 0x5EED_0F_F00D;
    let mut key = [0u8; 32];
    let mut index_state = index;
    for (c, chunk) in key.chunks_exact_mut(8).enumerate() {
        let word = splitmix64(&mut state) ^ if c % 2 == 0 { splitmix64(&mut index_state) } else { 0 };
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
