//! Seeded, splittable random streams.
//!
//! Every sampler in the crate draws from a ChaCha8 stream keyed by the user
//! seed and a stream id. Distinct suites use distinct stream ids, so adding a
//! draw to one suite never perturbs another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream keyed by a label (FNV-1a of the label bytes).
pub fn named(seed: u64, label: &str) -> SeededRng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    stream(seed, h)
}
