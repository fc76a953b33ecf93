//! Adaptive modulation over distance: the link steps down from 64-QAM to
//! BPSK as path loss grows, trading throughput for the BER target.
//!
//! Run with: cargo run --release --example adaptive_range

use adaptive_modem::harness::log_spaced;
use adaptive_modem::prelude::*;

fn main() -> Result<()> {
    let policy = derive_thresholds(1e-3, &Scheme::ALL, 1_000_000, 1)?.with_hysteresis(1.0)?;
    let spec = RangeSimSpec {
        distances: log_spaced(1.0, 100.0, 25)?,
        path_loss: PathLossModel::default(),
        policy,
        symbol_rate: 1e6,
        bits_per_point: 120_000,
        seed: 7,
    };
    let reports = run_range_sim(&spec)?;
    println!("{:>9} {:>8} {:>6} {:>10} {:>12}", "distance", "SNR dB", "scheme", "BER", "goodput b/s");
    for (d, r) in spec.distances.iter().zip(&reports) {
        println!(
            "{:>9.2} {:>8.2} {:>6} {:>10.2e} {:>12.0} {}",
            d,
            r.snr_db,
            r.scheme,
            r.ber,
            r.goodput_bps,
            "#".repeat(r.scheme.bits_per_symbol() * 4)
        );
    }
    Ok(())
}
