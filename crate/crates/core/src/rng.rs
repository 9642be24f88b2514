//! Seedable, splittable pseudorandom streams.
//!
//! Every stream is ChaCha8 (`rand_chacha::ChaCha8Rng`) keyed by a 64-bit seed
//! through `SeedableRng::seed_from_u64`. [`split`] keeps the key and selects
//! ChaCha stream `index + 1`, so the streams derived from one master seed are
//! independent of each other and of the master stream. Output is identical on
//! every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Master stream for `seed`.
pub fn from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derived stream number `index` of `seed`.
pub fn split(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}
