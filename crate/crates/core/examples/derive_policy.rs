//! Derives the per-scheme SNR thresholds for a target BER and prints the
//! policy file.
//!
//! Run with: cargo run --release --example derive_policy [target-ber]

use adaptive_modem::harness::esn0_to_ebn0;
use adaptive_modem::prelude::*;

fn main() -> Result<()> {
    let target: f64 = std::env::args().nth(1).map_or(Ok(1e-3), |s| s.parse()).expect("target BER");
    let budget = adaptive_modem::amc::required_budget(target).max(1_000_000);
    let policy = derive_thresholds(target, &Scheme::ALL, budget, 1)?;
    println!("target BER {target}, {budget} bits per grid point");
    println!("{:<6} {:>10} {:>10}", "scheme", "Es/N0 dB", "Eb/N0 dB");
    for e in policy.entries() {
        println!("{:<6} {:>10.2} {:>10.2}", e.scheme, e.min_snr_db, esn0_to_ebn0(e.scheme, e.min_snr_db));
    }
    println!("\n{}", policy.to_key_values().to_text());
    Ok(())
}
