//! AWGN channel and distance-to-SNR conversion.

use crate::constellation::Iq;
use crate::error::{Error, Result};
use crate::rng;

/// Cap returned by [`estimate_snr`] when the error power underflows.
pub const SNR_ESTIMATE_CAP_DB: f64 = 100.0;

/// Minimum number of symbols [`estimate_snr`] accepts.
pub const SNR_ESTIMATE_MIN_LEN: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    /// Es/N0 in dB, at one sample per symbol.
    pub es_n0_db: f64,
    pub seed: u64,
    /// Independent noise stream under the same seed.
    pub stream: u64,
}

impl ChannelConfig {
    pub fn new(es_n0_db: f64, seed: u64) -> Self {
        ChannelConfig { es_n0_db, seed, stream: 0 }
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    /// Total complex noise variance for unit symbol energy.
    pub fn noise_variance(&self) -> f64 {
        10f64.powf(-self.es_n0_db / 10.0)
    }
}

/// Adds complex white Gaussian noise of variance `10^(-Es/N0 / 10)`.
pub fn apply_awgn(symbols: &[Iq], cfg: &ChannelConfig) -> Result<Vec<Iq>> {
    apply_awgn_at(symbols, cfg, 0)
}

/// [`apply_awgn`] for a chunk that starts at sample `offset` of a longer
/// stream; the noise on each sample depends only on its absolute index.
pub fn apply_awgn_at(symbols: &[Iq], cfg: &ChannelConfig, offset: u64) -> Result<Vec<Iq>> {
    if !cfg.es_n0_db.is_finite() {
        return Err(Error::Config("es_n0_db must be finite".into()));
    }
    if let Some(index) = symbols.iter().position(|s| !s.re.is_finite() || !s.im.is_finite()) {
        return Err(Error::InvalidSample { index, reason: "non-finite component" });
    }
    let sigma = (cfg.noise_variance() / 2.0).sqrt();
    let noise = rng::unit_gaussian(cfg.seed, cfg.stream, offset, symbols.len());
    Ok(symbols.iter().zip(noise).map(|(s, n)| s + n * sigma).collect())
}

/// Log-distance path loss referenced to a measured SNR at `d0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossModel {
    pub snr0_db: f64,
    pub d0: f64,
    pub exponent: f64,
}

impl Default for PathLossModel {
    /// Free space from 1 m, with 30 dB at the reference so a 1–100 m sweep
    /// spans every scheme at a 1e-3 target BER.
    fn default() -> Self {
        PathLossModel { snr0_db: 30.0, d0: 1.0, exponent: 2.0 }
    }
}

impl PathLossModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.d0 > 0.0 && self.d0.is_finite()) {
            return Err(Error::Config("path loss reference distance must be positive".into()));
        }
        if !(self.exponent > 0.0 && self.exponent.is_finite()) {
            return Err(Error::Config("path loss exponent must be positive".into()));
        }
        if !self.snr0_db.is_finite() {
            return Err(Error::Config("reference SNR must be finite".into()));
        }
        Ok(())
    }
}

pub fn snr_from_distance(d: f64, m: &PathLossModel) -> Result<f64> {
    m.validate()?;
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Domain(format!("distance must be positive and finite, got {d}")));
    }
    Ok(m.snr0_db - 10.0 * m.exponent * (d / m.d0).log10())
}

/// Data-aided SNR estimate from a received block and the symbols sent.
pub fn estimate_snr(rx: &[Iq], tx: &[Iq]) -> Result<f64> {
    if rx.len() != tx.len() {
        return Err(Error::Framing { expected: tx.len(), actual: rx.len() });
    }
    if tx.len() < SNR_ESTIMATE_MIN_LEN {
        return Err(Error::InsufficientData { needed: SNR_ESTIMATE_MIN_LEN, actual: tx.len() });
    }
    let n = tx.len() as f64;
    let signal = tx.iter().map(|s| s.norm_sqr()).sum::<f64>() / n;
    let error = rx.iter().zip(tx).map(|(r, t)| (r - t).norm_sqr()).sum::<f64>() / n;
    if error == 0.0 {
        return Ok(SNR_ESTIMATE_CAP_DB);
    }
    Ok((10.0 * (signal / error).log10()).min(SNR_ESTIMATE_CAP_DB))
}
