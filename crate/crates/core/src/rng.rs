//! Seeded random streams.
//!
//! Every randomized routine takes a master seed and a stream number; the
//! stream selects an independent ChaCha keystream so results do not depend
//! on how work is split.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream ids for the named sampling purposes.
pub mod streams {
    pub const BIJECTION: u64 = 1;
    pub const PROPERTY1: u64 = 2;
    pub const PROPERTY2: u64 = 3;
    pub const CLIQUES: u64 = 4;
    pub const GENERATOR: u64 = 5;

    /// Stream for the `index`-th item of a family, e.g. per trial or per clique.
    pub fn indexed(base: u64, index: u64) -> u64 {
        (base << 40) ^ index.wrapping_add(1)
    }
}
