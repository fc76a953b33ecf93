//! Experiment runners: BER sweeps and adaptive range simulations, plus the
//! CSV and sample-file writers they feed.

pub mod csv;
pub mod iqfile;

pub use self::csv::{emit_csv, write_csv_file, CSV_HEADER};
pub use self::iqfile::{export_iq, export_iq_file, read_iq, read_iq_file, SampleData, SampleFile};

use rayon::prelude::*;

use crate::amc::{throughput_bits_per_sec, AmcController, AmcPolicy};
use crate::channel::{snr_from_distance, PathLossModel};
use crate::constellation::Scheme;
use crate::error::{Error, Result};
use crate::sim::simulate_link;

/// Fewer measured errors than this marks a point unreliable.
pub const RELIABLE_MIN_ERRORS: u64 = 100;

pub const MIN_SWEEP_BITS: u64 = 10_000;

/// Converts Eb/N0 to Es/N0 for `scheme`.
pub fn ebn0_to_esn0(scheme: Scheme, ebn0_db: f64) -> f64 {
    ebn0_db + 10.0 * (scheme.bits_per_symbol() as f64).log10()
}

pub fn esn0_to_ebn0(scheme: Scheme, esn0_db: f64) -> f64 {
    esn0_db - 10.0 * (scheme.bits_per_symbol() as f64).log10()
}

/// One measured link point.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkReport {
    pub scheme: Scheme,
    /// Es/N0 in dB.
    pub snr_db: f64,
    pub ebn0_db: f64,
    pub bits_sent: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub goodput_bps: f64,
    /// At least [`RELIABLE_MIN_ERRORS`] errors were observed, i.e. the BER is
    /// not below `100 / bits_sent`.
    pub reliable: bool,
}

/// Simulates one point given as an (Es/N0, Eb/N0) pair, whichever of the two
/// was the input being exact.
fn measure(
    scheme: Scheme,
    (es_n0_db, ebn0_db): (f64, f64),
    bits: u64,
    seed: u64,
    point: u64,
    symbol_rate: f64,
) -> Result<LinkReport> {
    let count = simulate_link(scheme, es_n0_db, bits, seed, point)?;
    let ber = count.ber();
    Ok(LinkReport {
        scheme,
        snr_db: es_n0_db,
        ebn0_db,
        bits_sent: count.bits,
        bit_errors: count.bit_errors,
        ber,
        goodput_bps: throughput_bits_per_sec(scheme, symbol_rate)? * (1.0 - ber),
        reliable: count.bit_errors >= RELIABLE_MIN_ERRORS,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scheme: Scheme,
    pub ebn0_db_points: Vec<f64>,
    pub bits_per_point: u64,
    pub seed: u64,
    /// Only used to scale goodput.
    pub symbol_rate: f64,
}

impl SweepSpec {
    pub fn new(scheme: Scheme, ebn0_db_points: Vec<f64>, bits_per_point: u64, seed: u64) -> Self {
        SweepSpec { scheme, ebn0_db_points, bits_per_point, seed, symbol_rate: 1e6 }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.scheme.bits_per_symbol() as u64;
        if self.bits_per_point < MIN_SWEEP_BITS {
            return Err(Error::Config(format!(
                "bits per point must be at least {MIN_SWEEP_BITS}, got {}",
                self.bits_per_point
            )));
        }
        if !self.bits_per_point.is_multiple_of(k) {
            return Err(Error::Config(format!(
                "bits per point {} is not a multiple of {k} for {}",
                self.bits_per_point, self.scheme
            )));
        }
        if self.ebn0_db_points.iter().any(|p| !p.is_finite()) {
            return Err(Error::Config("Eb/N0 points must be finite".into()));
        }
        if !(self.symbol_rate > 0.0 && self.symbol_rate.is_finite()) {
            return Err(Error::Config("symbol rate must be positive".into()));
        }
        Ok(())
    }
}

/// Inclusive range `start, start + step, ...` up to `stop` (with a small
/// tolerance so `0..=6 step 2` includes 6).
pub fn stepped_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::Config(format!("bad range {start}..={stop} step {step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| start + i as f64 * step).collect())
}

/// BER at each Eb/N0 point. Point `i` uses its own bit and noise substreams,
/// so the result does not depend on how points are spread over threads.
pub fn run_ber_sweep(spec: &SweepSpec) -> Result<Vec<LinkReport>> {
    spec.validate()?;
    spec.ebn0_db_points
        .par_iter()
        .enumerate()
        .map(|(i, &ebn0)| {
            measure(
                spec.scheme,
                (ebn0_to_esn0(spec.scheme, ebn0), ebn0),
                spec.bits_per_point,
                spec.seed,
                i as u64,
                spec.symbol_rate,
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RangeSimSpec {
    pub distances: Vec<f64>,
    pub path_loss: PathLossModel,
    pub policy: AmcPolicy,
    pub symbol_rate: f64,
    pub bits_per_point: u64,
    pub seed: u64,
}

impl RangeSimSpec {
    pub fn validate(&self) -> Result<()> {
        self.path_loss.validate()?;
        self.policy.validate()?;
        if self.distances.is_empty() {
            return Err(Error::Config("no distances to simulate".into()));
        }
        if self.distances.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
            return Err(Error::Config("distances must be positive".into()));
        }
        if self.distances.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("distances must be strictly increasing".into()));
        }
        if !(self.symbol_rate > 0.0 && self.symbol_rate.is_finite()) {
            return Err(Error::Config("symbol rate must be positive".into()));
        }
        if self.bits_per_point < Scheme::Qam64.bits_per_symbol() as u64 {
            return Err(Error::Config("bits per point too small".into()));
        }
        Ok(())
    }
}

/// `points` distances spaced evenly in log scale over `[dmin, dmax]`.
pub fn log_spaced(dmin: f64, dmax: f64, points: usize) -> Result<Vec<f64>> {
    if !(dmin > 0.0 && dmax > dmin && dmax.is_finite()) || points < 2 {
        return Err(Error::Config(format!("need 0 < dmin < dmax and at least 2 points, got {dmin}, {dmax}, {points}")));
    }
    let (lo, hi) = (dmin.ln(), dmax.ln());
    Ok((0..points)
        .map(|i| match i {
            0 => dmin,
            i if i == points - 1 => dmax,
            i => (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp(),
        })
        .collect())
}

/// Walks the distances nearest first, adapting the scheme to each point's
/// SNR, and measures the resulting link.
pub fn run_range_sim(spec: &RangeSimSpec) -> Result<Vec<LinkReport>> {
    spec.validate()?;
    let mut controller = AmcController::new(spec.policy.clone());
    let plan = spec
        .distances
        .iter()
        .map(|&d| {
            let snr = snr_from_distance(d, &spec.path_loss)?;
            Ok((controller.update(snr), snr))
        })
        .collect::<Result<Vec<_>>>()?;
    plan.par_iter()
        .enumerate()
        .map(|(i, &(scheme, snr))| {
            let k = scheme.bits_per_symbol() as u64;
            let bits = spec.bits_per_point - spec.bits_per_point % k;
            measure(scheme, (snr, esn0_to_ebn0(scheme, snr)), bits, spec.seed, i as u64, spec.symbol_rate)
        })
        .collect()
}
