//! Seeded, seekable random streams.
//!
//! Everything random in the crate comes from ChaCha8 keyed by a 64-bit seed
//! and a stream id. Streams are independent of each other, and noise is
//! addressed by sample index, so splitting work into chunks or across threads
//! never changes a result.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constellation::{Bit, Iq};

/// What a stream is used for within one simulation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Role {
    Bits = 1,
    Noise = 2,
}

/// Stream id for `role` at simulation point `point`.
pub fn substream(point: u64, role: Role) -> u64 {
    (point << 8) | role as u64
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `n` uniformly random bits.
pub fn random_bits(seed: u64, stream: u64, n: usize) -> Vec<Bit> {
    let mut rng = stream_rng(seed, stream);
    let mut bits = Vec::with_capacity(n);
    while bits.len() < n {
        let word = rng.next_u64();
        let take = (n - bits.len()).min(64);
        bits.extend((0..take).map(|i| ((word >> i) & 1) as Bit));
    }
    bits
}

/// 32-bit words consumed per complex noise sample.
const WORDS_PER_SAMPLE: u128 = 4;

/// Complex Gaussian samples with unit variance per real dimension, for
/// sample indices `offset..offset + n` of the stream.
pub fn unit_gaussian(seed: u64, stream: u64, offset: u64, n: usize) -> Vec<Iq> {
    let mut rng = stream_rng(seed, stream);
    rng.set_word_pos(u128::from(offset) * WORDS_PER_SAMPLE);
    (0..n)
        .map(|_| {
            // Box-Muller with a fixed two words per draw
            let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
            let u2 = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            let r = (-2.0 * u1.ln()).sqrt();
            let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
            Iq::new(r * c, r * s)
        })
        .collect()
}
