//! Sampled passband keying and coherent demodulation.
//!
//! Symbols are rectangular segments of `samples_per_symbol` samples. The
//! carrier must complete a whole number of cycles per symbol so the
//! quadrature correlator in [`demod_coherent`] is exact.

use std::f64::consts::TAU;

use crate::constellation::{check_bits, Bit, Iq};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassbandParams {
    pub carrier_frequency: f64,
    pub sample_rate: f64,
    pub samples_per_symbol: usize,
    /// FSK tones for bit 0 and bit 1.
    pub fsk_frequencies: (f64, f64),
    /// ASK amplitudes for bit 0 and bit 1.
    pub ask_amplitudes: (f64, f64),
}

impl Default for PassbandParams {
    /// 48 kHz sampling, 32 samples per symbol (1500 baud), carrier at 4
    /// cycles per symbol, FSK tones at 2 and 4 cycles, on-off ASK.
    fn default() -> Self {
        PassbandParams {
            carrier_frequency: 6000.0,
            sample_rate: 48_000.0,
            samples_per_symbol: 32,
            fsk_frequencies: (3000.0, 6000.0),
            ask_amplitudes: (0.0, 1.0),
        }
    }
}

impl PassbandParams {
    pub fn symbol_rate(&self) -> f64 {
        self.sample_rate / self.samples_per_symbol as f64
    }

    /// Carrier cycles per symbol at frequency `f`.
    pub fn cycles_per_symbol(&self, f: f64) -> f64 {
        f * self.samples_per_symbol as f64 / self.sample_rate
    }

    pub fn validate(&self) -> Result<()> {
        let (f0, f1) = self.fsk_frequencies;
        let (a0, a1) = self.ask_amplitudes;
        let all_finite = [self.carrier_frequency, self.sample_rate, f0, f1, a0, a1].iter().all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::Config("passband parameters must be finite".into()));
        }
        if self.carrier_frequency <= 0.0 || f0 <= 0.0 || f1 <= 0.0 {
            return Err(Error::Config("frequencies must be positive".into()));
        }
        let f_max = self.carrier_frequency.max(f0).max(f1);
        if self.sample_rate <= 2.0 * f_max {
            return Err(Error::Config(format!(
                "sample rate {} Hz violates Nyquist for {} Hz",
                self.sample_rate, f_max
            )));
        }
        if self.samples_per_symbol < 4 {
            return Err(Error::Config("samples_per_symbol must be at least 4".into()));
        }
        if whole_cycles(self.cycles_per_symbol(self.carrier_frequency)).is_none() {
            return Err(Error::Config(format!(
                "carrier {} Hz does not fit a whole number of cycles in {} samples at {} Hz",
                self.carrier_frequency, self.samples_per_symbol, self.sample_rate
            )));
        }
        if a0 >= a1 {
            return Err(Error::Config("ASK amplitudes must satisfy a0 < a1".into()));
        }
        if a0 < 0.0 {
            return Err(Error::Config("ASK amplitudes must be non-negative".into()));
        }
        if f0 == f1 {
            return Err(Error::Config("FSK tones must differ".into()));
        }
        Ok(())
    }
}

fn whole_cycles(cycles: f64) -> Option<u64> {
    let rounded = cycles.round();
    ((cycles - rounded).abs() < 1e-9 && rounded >= 1.0).then_some(rounded as u64)
}

/// Real passband samples with their sampling rate.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSamples {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
}

impl RealSamples {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Samples of symbol `index`.
    pub fn segment(&self, index: usize, samples_per_symbol: usize) -> &[f64] {
        &self.samples[index * samples_per_symbol..(index + 1) * samples_per_symbol]
    }
}

/// Amplitude keying: `a(bit) * sin(2π fc t)`.
pub fn synth_ask(bits: &[Bit], p: &PassbandParams) -> Result<RealSamples> {
    p.validate()?;
    check_bits(bits)?;
    let (_, sin) = carrier_tables(p);
    let samples = bits
        .iter()
        .flat_map(|&b| {
            let a = if b == 0 { p.ask_amplitudes.0 } else { p.ask_amplitudes.1 };
            sin.iter().map(move |s| a * s)
        })
        .collect();
    Ok(RealSamples { samples, sample_rate: p.sample_rate })
}

/// Phase-continuous binary FSK with unit amplitude.
pub fn synth_fsk(bits: &[Bit], p: &PassbandParams) -> Result<RealSamples> {
    p.validate()?;
    check_bits(bits)?;
    let (f0, f1) = p.fsk_frequencies;
    for f in [f0, f1] {
        if whole_cycles(p.cycles_per_symbol(f)).is_none() {
            return Err(Error::Config(format!("FSK tone {f} Hz does not fit a whole number of cycles per symbol")));
        }
    }
    let sps = p.samples_per_symbol;
    let mut samples = Vec::with_capacity(bits.len() * sps);
    // phase in cycles, wrapped to keep precision over long streams
    let mut phase = 0.0f64;
    for &b in bits {
        let step = if b == 0 { f0 } else { f1 } / p.sample_rate;
        for _ in 0..sps {
            samples.push((TAU * phase).sin());
            phase = (phase + step).fract();
        }
    }
    Ok(RealSamples { samples, sample_rate: p.sample_rate })
}

/// Quadrature keying: `I cos(2π fc t) − Q sin(2π fc t)` per symbol.
pub fn synth_psk_qam(symbols: &[Iq], p: &PassbandParams) -> Result<RealSamples> {
    p.validate()?;
    let sps = p.samples_per_symbol;
    let (cos, sin) = carrier_tables(p);
    let mut samples = Vec::with_capacity(symbols.len() * sps);
    for s in symbols {
        samples.extend((0..sps).map(|n| s.re * cos[n] - s.im * sin[n]));
    }
    Ok(RealSamples { samples, sample_rate: p.sample_rate })
}

/// Correlates each symbol segment against the carrier, assuming perfect
/// carrier phase and symbol timing.
pub fn demod_coherent(samples: &RealSamples, p: &PassbandParams, n_symbols: usize) -> Result<Vec<Iq>> {
    p.validate()?;
    let sps = p.samples_per_symbol;
    let expected = n_symbols * sps;
    if samples.len() != expected {
        return Err(Error::Framing { expected, actual: samples.len() });
    }
    let (cos, sin) = carrier_tables(p);
    let norm = 2.0 / sps as f64;
    Ok(samples
        .samples
        .chunks_exact(sps)
        .map(|seg| {
            let (i, q) = seg.iter().enumerate().fold((0.0, 0.0), |(i, q), (n, &x)| (i + x * cos[n], q + x * sin[n]));
            Iq::new(norm * i, -norm * q)
        })
        .collect())
}

/// One symbol's worth of carrier. Whole cycles per symbol make every symbol
/// see the same table.
fn carrier_tables(p: &PassbandParams) -> (Vec<f64>, Vec<f64>) {
    let w = TAU * p.carrier_frequency / p.sample_rate;
    (0..p.samples_per_symbol)
        .map(|n| {
            let (s, c) = (w * n as f64).sin_cos();
            (c, s)
        })
        .unzip()
}
