//! Deterministic derivation of per-task random streams.
//!
//! Every randomized subcomputation (a slice choice, one retry of one
//! projective degree, ...) gets its own ChaCha stream derived from the
//! master seed and a list of integer tags identifying the task. Reruns
//! with the same master seed therefore reproduce every coefficient that
//! was ever drawn, independent of evaluation order or thread scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default prime for zero-dimensional counting: 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Independent second prime used to validate counts: 2^31 - 19.
pub const SECOND_PRIME: u64 = 2_147_483_629;

/// Fallback when a caller picks one of the two defaults explicitly.
pub const THIRD_PRIME: u64 = 2_147_483_587;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable hash of a tag list; used both for stream derivation and for
/// folding multi-index tags into a single integer.
pub fn mix_tags(master: u64, tags: &[u64]) -> u64 {
    let mut state = master ^ 0x5851_F42D_4C95_7F2D;
    let mut acc = splitmix64(&mut state);
    for &t in tags {
        state ^= t.wrapping_mul(0x2545_F491_4F6C_DD1D);
        acc ^= splitmix64(&mut state);
    }
    acc
}

/// Derive an independent ChaCha stream for the task identified by `tags`.
pub fn derive_rng(master: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut state = mix_tags(master, tags);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

/// Fold a multi-index into a tag.
pub fn index_tag(a: &[u32]) -> u64 {
    mix_tags(0x6a09_e667_f3bc_c908, &a.iter().map(|&x| x as u64).collect::<Vec<_>>())
}
