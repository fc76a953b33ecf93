//! CSV report output.
//!
//! Header `scheme,snr_db,ebn0_db,bits,bit_errors,ber,goodput_bps,reliable`,
//! LF line endings. `ber` is printed in plain decimal with six significant
//! digits; other floats use the shortest representation that parses back
//! to the same value.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::LinkReport;
use crate::error::Result;

pub const CSV_HEADER: &str = "scheme,snr_db,ebn0_db,bits,bit_errors,ber,goodput_bps,reliable";

/// Plain decimal with `digits` significant digits; zero prints as `0`.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{value:.decimals$}");
    // rounding can carry into the next decade (0.0999999 -> 0.1000000)
    let carried: f64 = s.parse().unwrap_or(value);
    if carried != 0.0 && carried.abs().log10().floor() as i32 > magnitude && decimals > 0 {
        let decimals = decimals - 1;
        return format!("{value:.decimals$}");
    }
    s
}

pub fn emit_csv<W: Write>(reports: &[LinkReport], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.scheme,
            r.snr_db,
            r.ebn0_db,
            r.bits_sent,
            r.bit_errors,
            format_significant(r.ber, 6),
            r.goodput_bps,
            r.reliable
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv_file(reports: &[LinkReport], path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    emit_csv(reports, BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.0786123456, 6), "0.0786123");
        assert_eq!(format_significant(0.5, 6), "0.500000");
        assert_eq!(format_significant(1.234567891e-7, 6), "0.000000123457");
        assert_eq!(format_significant(0.09999999, 6), "0.100000");
        assert_eq!(format_significant(0.0, 6), "0");
        assert_eq!(format_significant(1.0, 6), "1.00000");
    }
}
