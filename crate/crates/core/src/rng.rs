//! Pinned random streams.
//!
//! Generator: ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded with a 64-bit value.
//! Split function: the seed of a sub-stream is obtained by folding each path
//! component into the master seed with the SplitMix64 finaliser,
//! `s ← mix(s ⊕ mix(component + GOLDEN))`. Streams addressed by distinct paths
//! are independent for practical purposes, and a stream depends only on its
//! path, never on scheduling.
//!
//! Reproducibility is bit-exact within this implementation only.

use rand::RngCore;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type Stream = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream tags used by the crate so unrelated draws never share a path.
pub mod tag {
    pub const SPECTRUM: u64 = 0x7370_6563;
    pub const EXTREME: u64 = 0x6578_7472;
    pub const POLY: u64 = 0x706f_6c79;
    pub const ROTATION: u64 = 0x726f_7461;
    pub const CLOUD: u64 = 0x636c_6f75;
    pub const MANIFOLD: u64 = 0x6d61_6e69;
    pub const SEARCH: u64 = 0x7365_6172;
    pub const SUBSPACE: u64 = 0x7375_6273;
}

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed of the sub-stream addressed by `path` under `master`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(master.wrapping_add(GOLDEN)), |s, &c| {
        mix(s ^ mix(c.wrapping_add(GOLDEN)))
    })
}

/// Open the stream addressed by `path` under `master`.
pub fn stream(master: u64, path: &[u64]) -> Stream {
    ChaCha8Rng::seed_from_u64(derive_seed(master, path))
}

/// Uniform draw on `[0, 1)` from the top 53 bits of one 64-bit output.
#[inline]
pub fn unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw on `[-nu, nu]` (endpoint behaviour unspecified).
#[inline]
pub fn symmetric(rng: &mut impl RngCore, nu: f64) -> f64 {
    nu * (2.0 * unit(rng) - 1.0)
}

/// Fair coin mapped to ±1.
#[inline]
pub fn sign(rng: &mut impl RngCore) -> f64 {
    if rng.next_u64() >> 63 == 1 {
        -1.0
    } else {
        1.0
    }
}
