//! Deterministic, partition-independent random streams.
//!
//! Samples are grouped into fixed-size chunks; chunk `k` draws from the ChaCha
//! stream `k` of the run seed. Results therefore depend only on the seed and
//! sample count, never on how many workers process the chunks.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) const CHUNK: u64 = 4096;

pub(crate) fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

pub(crate) fn chunk_ranges(samples: u64) -> Vec<(u64, Range<u64>)> {
    (0..samples.div_ceil(CHUNK))
        .map(|k| (k, k * CHUNK..((k + 1) * CHUNK).min(samples)))
        .collect()
}

/// Uniform in `(0, 1]`.
pub(crate) fn positive_unit(rng: &mut impl Rng) -> f64 {
    1.0 - rng.random::<f64>()
}

pub(crate) fn random_sign(rng: &mut impl Rng) -> f64 {
    if rng.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// Log-uniform magnitude in `[lo, hi]`.
pub(crate) fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    let (l, h) = (lo.ln(), hi.ln());
    (l + (h - l) * rng.random::<f64>()).exp()
}
