//! Synthesizes ASK, FSK, BPSK and 16-QAM passband waveforms, demodulates the
//! quadrature ones coherently, and writes each waveform to an IQF1 file.
//!
//! Run with: cargo run --example passband_keying [output-dir]

use adaptive_modem::harness::{export_iq_file, SampleData};
use adaptive_modem::prelude::*;

fn rms(x: &[f64]) -> f64 {
    (x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()
}

fn main() -> Result<()> {
    let out_dir = std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string());
    let p = PassbandParams { ask_amplitudes: (0.25, 1.0), ..PassbandParams::default() };
    let sps = p.samples_per_symbol;
    println!(
        "fs = {} Hz, {} samples/symbol ({} baud), carrier {} cycles/symbol",
        p.sample_rate,
        sps,
        p.symbol_rate(),
        p.cycles_per_symbol(p.carrier_frequency)
    );

    let bits = [0, 1, 1, 0];
    let ask = synth_ask(&bits, &p)?;
    let per_symbol: Vec<String> = (0..bits.len()).map(|i| format!("{:.3}", rms(ask.segment(i, sps)))).collect();
    println!("ASK  {bits:?}: segment RMS {}", per_symbol.join(" "));

    let fsk = synth_fsk(&bits, &p)?;
    println!("FSK  {bits:?}: {} samples, tones {:?} Hz", fsk.len(), p.fsk_frequencies);

    let bpsk = Constellation::new(Scheme::Bpsk);
    let wave = synth_psk_qam(&bpsk.map_bits(&[0, 1])?, &p)?;
    let negated = wave.segment(0, sps).iter().zip(wave.segment(1, sps)).all(|(a, b)| *b == -*a);
    println!("BPSK [0, 1]: second segment is the exact negation of the first: {negated}");

    let qam = Constellation::new(Scheme::Qam16);
    let qbits = [1, 0, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1];
    let syms = qam.map_bits(&qbits)?;
    let wave16 = synth_psk_qam(&syms, &p)?;
    let back = demod_coherent(&wave16, &p, syms.len())?;
    let max_err = syms.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("16-QAM loopback: max symbol error {max_err:.2e}, bits {:?}", qam.demap_hard(&back)?);

    for (name, w) in [("ask", &ask), ("fsk", &fsk), ("bpsk", &wave), ("qam16", &wave16)] {
        let path = std::path::Path::new(&out_dir).join(format!("{name}.iq"));
        export_iq_file(SampleData::Real(w), &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
