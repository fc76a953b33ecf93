//! BER versus Eb/N0 for every scheme over AWGN, as CSV on stdout.
//!
//! Run with: cargo run --release --example awgn_ber_curve > ber.csv

use adaptive_modem::harness::{emit_csv, stepped_range};
use adaptive_modem::prelude::*;

fn main() -> Result<()> {
    let points = stepped_range(0.0, 14.0, 1.0)?;
    let mut reports = Vec::new();
    for scheme in Scheme::ALL {
        // 120 000 is a whole number of symbols for every scheme
        let spec = SweepSpec::new(scheme, points.clone(), 120_000, 42);
        reports.extend(run_ber_sweep(&spec)?);
    }
    emit_csv(&reports, std::io::stdout().lock())
}
