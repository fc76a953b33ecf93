//! Monte-Carlo link: random bits, mapping, AWGN, hard demapping, counting.

use crate::channel::{apply_awgn_at, ChannelConfig};
use crate::constellation::{Constellation, Scheme};
use crate::error::{Error, Result};
use crate::rng::{self, Role};

/// Symbols processed per chunk.
const CHUNK_SYMBOLS: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LinkCount {
    pub bits: u64,
    pub bit_errors: u64,
    pub symbols: u64,
    pub symbol_errors: u64,
}

impl LinkCount {
    pub fn ber(&self) -> f64 {
        if self.bits == 0 {
            0.0
        } else {
            self.bit_errors as f64 / self.bits as f64
        }
    }
}

/// Sends `n_bits` random bits through `scheme` at `es_n0_db`.
///
/// Bits and noise come from the substreams of `point` under `seed`, so two
/// calls that differ only in `es_n0_db` see the same bits and the same noise
/// shape, scaled.
pub fn simulate_link(scheme: Scheme, es_n0_db: f64, n_bits: u64, seed: u64, point: u64) -> Result<LinkCount> {
    let k = scheme.bits_per_symbol();
    if !n_bits.is_multiple_of(k as u64) {
        return Err(Error::Length { len: n_bits as usize, multiple: k });
    }
    let c = Constellation::new(scheme);
    let cfg = ChannelConfig::new(es_n0_db, seed).with_stream(rng::substream(point, Role::Noise));
    let bits = rng::random_bits(seed, rng::substream(point, Role::Bits), n_bits as usize);

    let mut count = LinkCount::default();
    let mut offset = 0u64;
    for chunk in bits.chunks(CHUNK_SYMBOLS * k) {
        let tx = c.map_bits(chunk)?;
        let rx = apply_awgn_at(&tx, &cfg, offset)?;
        let decided = c.demap_hard(&rx)?;
        for (sent, got) in chunk.chunks_exact(k).zip(decided.chunks_exact(k)) {
            let errs = sent.iter().zip(got).filter(|(a, b)| a != b).count() as u64;
            count.bit_errors += errs;
            count.symbol_errors += u64::from(errs > 0);
        }
        offset += tx.len() as u64;
    }
    count.bits = n_bits;
    count.symbols = offset;
    Ok(count)
}
