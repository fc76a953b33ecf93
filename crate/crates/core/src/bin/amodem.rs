//! Command-line front end for the link simulator.
//!
//! Every long flag may also come from `--config FILE`, a flat `key = value`
//! file whose keys are the flag names without dashes. Flags given on the
//! command line win over the file.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use adaptive_modem::amc::{derive_thresholds, AmcPolicy};
use adaptive_modem::channel::PathLossModel;
use adaptive_modem::config::KeyValues;
use adaptive_modem::constellation::{dqpsk_encode, parse_bits, Constellation, Scheme};
use adaptive_modem::harness::{
    emit_csv, export_iq, log_spaced, run_ber_sweep, run_range_sim, stepped_range, RangeSimSpec, SampleData, SweepSpec,
};
use adaptive_modem::rng;
use adaptive_modem::waveform::{synth_ask, synth_fsk, synth_psk_qam, PassbandParams};
use adaptive_modem::Error;
use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "amodem", version, about = "Baseband modem and adaptive-modulation link simulator")]
#[command(args_override_self = true)]
struct Cli {
    /// Flat key = value file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for simulations (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// BER versus Eb/N0 for one scheme, as CSV.
    BerSweep {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        ebn0_start: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        ebn0_stop: f64,
        #[arg(long, default_value_t = 1.0)]
        ebn0_step: f64,
        /// Bits per point; must be a multiple of the bits per symbol.
        #[arg(long, default_value_t = 1_200_000)]
        bits: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e6)]
        symbol_rate: f64,
        /// Output CSV path, `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Adaptive link over a log-spaced range of distances, as CSV.
    RangeSim {
        #[arg(long, default_value_t = 1.0)]
        dmin: f64,
        #[arg(long, default_value_t = 100.0)]
        dmax: f64,
        #[arg(long, default_value_t = 41)]
        points: usize,
        #[arg(long, default_value_t = 2.0)]
        exponent: f64,
        /// SNR (Es/N0) at the reference distance.
        #[arg(long, default_value_t = 30.0, allow_negative_numbers = true)]
        snr0: f64,
        #[arg(long, default_value_t = 1.0)]
        d0: f64,
        #[arg(long, default_value_t = 1e-3)]
        target_ber: f64,
        #[arg(long, default_value_t = 1.0)]
        hysteresis: f64,
        #[arg(long, default_value_t = 1e6)]
        symbol_rate: f64,
        /// Bits simulated per distance, rounded down to whole symbols.
        #[arg(long, default_value_t = 200_000)]
        bits: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Bits per SNR point when deriving the policy.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Use a saved policy instead of deriving one.
        #[arg(long)]
        policy: Option<PathBuf>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Derive per-scheme SNR thresholds for a target BER.
    DerivePolicy {
        #[arg(long, default_value_t = 1e-3)]
        target_ber: f64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        hysteresis: f64,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Synthesize a waveform into an IQF1 sample file.
    Synth {
        #[arg(long)]
        scheme: Waveform,
        /// Text file of 0/1 characters.
        #[arg(long, conflicts_with = "random_bits", required_unless_present = "random_bits")]
        bits_file: Option<PathBuf>,
        /// Number of random bits to send.
        #[arg(long)]
        random_bits: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 6000.0)]
        carrier: f64,
        #[arg(long, default_value_t = 48_000.0)]
        sample_rate: f64,
        #[arg(long, default_value_t = 32)]
        sps: usize,
        #[arg(long, default_value_t = 3000.0)]
        f0: f64,
        #[arg(long, default_value_t = 6000.0)]
        f1: f64,
        #[arg(long, default_value_t = 0.0)]
        a0: f64,
        #[arg(long, default_value_t = 1.0)]
        a1: f64,
        /// Starting phase for differential QPSK, degrees.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        reference_phase: f64,
        /// Write complex baseband symbols instead of the passband waveform.
        #[arg(long)]
        baseband: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Waveform {
    Ask,
    Fsk,
    Bpsk,
    Qpsk,
    Qam16,
    Qam64,
    Dqpsk,
}

fn output(path: &str) -> io::Result<Box<dyn Write>> {
    Ok(if path == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(File::create(path)?))
    })
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::BerSweep { scheme, ebn0_start, ebn0_stop, ebn0_step, bits, seed, symbol_rate, out } => {
            let spec = SweepSpec {
                symbol_rate,
                ..SweepSpec::new(scheme, stepped_range(ebn0_start, ebn0_stop, ebn0_step)?, bits, seed)
            };
            let reports = run_ber_sweep(&spec)?;
            emit_csv(&reports, output(&out)?)
        }
        Command::RangeSim {
            dmin,
            dmax,
            points,
            exponent,
            snr0,
            d0,
            target_ber,
            hysteresis,
            symbol_rate,
            bits,
            seed,
            budget,
            policy,
            out,
        } => {
            let policy = match policy {
                Some(path) => AmcPolicy::from_key_values(&KeyValues::load(path)?)?,
                None => derive_thresholds(target_ber, &Scheme::ALL, budget, seed)?,
            }
            .with_hysteresis(hysteresis)?;
            let spec = RangeSimSpec {
                distances: log_spaced(dmin, dmax, points)?,
                path_loss: PathLossModel { snr0_db: snr0, d0, exponent },
                policy,
                symbol_rate,
                bits_per_point: bits,
                seed,
            };
            let reports = run_range_sim(&spec)?;
            emit_csv(&reports, output(&out)?)
        }
        Command::DerivePolicy { target_ber, budget, seed, hysteresis, out } => {
            let policy = derive_thresholds(target_ber, &Scheme::ALL, budget, seed)?.with_hysteresis(hysteresis)?;
            let mut w = output(&out)?;
            writeln!(w, "# target-ber {target_ber}, budget {budget} bits, seed {seed}; thresholds are Es/N0 in dB")?;
            w.write_all(policy.to_key_values().to_text().as_bytes())?;
            w.flush()?;
            Ok(())
        }
        Command::Synth {
            scheme,
            bits_file,
            random_bits,
            seed,
            carrier,
            sample_rate,
            sps,
            f0,
            f1,
            a0,
            a1,
            reference_phase,
            baseband,
            out,
        } => {
            let bits = match (bits_file, random_bits) {
                (Some(path), _) => parse_bits(&std::fs::read_to_string(path)?)?,
                (None, Some(n)) => rng::random_bits(seed, 0, n),
                (None, None) => return Err(Error::Config("one of --bits-file or --random-bits is required".into())),
            };
            let p = PassbandParams {
                carrier_frequency: carrier,
                sample_rate,
                samples_per_symbol: sps,
                fsk_frequencies: (f0, f1),
                ask_amplitudes: (a0, a1),
            };
            p.validate()?;
            let symbols = match scheme {
                Waveform::Ask | Waveform::Fsk if baseband => {
                    return Err(Error::Config("--baseband applies to PSK/QAM schemes only".into()))
                }
                Waveform::Ask => {
                    return export_iq(SampleData::Real(&synth_ask(&bits, &p)?), output(&out.to_string_lossy())?)
                }
                Waveform::Fsk => {
                    return export_iq(SampleData::Real(&synth_fsk(&bits, &p)?), output(&out.to_string_lossy())?)
                }
                Waveform::Dqpsk => dqpsk_encode(&bits, reference_phase)?,
                Waveform::Bpsk => Constellation::new(Scheme::Bpsk).map_bits(&bits)?,
                Waveform::Qpsk => Constellation::new(Scheme::Qpsk).map_bits(&bits)?,
                Waveform::Qam16 => Constellation::new(Scheme::Qam16).map_bits(&bits)?,
                Waveform::Qam64 => Constellation::new(Scheme::Qam64).map_bits(&bits)?,
            };
            let w = output(&out.to_string_lossy())?;
            if baseband {
                export_iq(SampleData::Complex { samples: &symbols, sample_rate: p.symbol_rate() }, w)
            } else {
                export_iq(SampleData::Real(&synth_psk_qam(&symbols, &p)?), w)
            }
        }
    }
}

/// Finds `--config` in the raw arguments and splices the file's entries in
/// right after the subcommand, ahead of the user's own flags.
fn merge_config(args: Vec<String>) -> Result<Vec<String>, Error> {
    let path = args.iter().enumerate().find_map(|(i, a)| {
        a.strip_prefix("--config=")
            .map(str::to_string)
            .or_else(|| (a == "--config").then(|| args.get(i + 1).cloned()).flatten())
    });
    let Some(path) = path else {
        return Ok(args);
    };
    let kv = KeyValues::load(path)?;
    let cmd = Cli::command();
    let Some((pos, sub)) = args.iter().enumerate().skip(1).find_map(|(i, a)| cmd.find_subcommand(a).map(|s| (i, s)))
    else {
        return Ok(args);
    };
    let mut injected = Vec::new();
    for (key, value) in kv.iter() {
        let flag = sub
            .get_arguments()
            .chain(cmd.get_arguments())
            .find(|arg| arg.get_long() == Some(key))
            .ok_or_else(|| Error::Config(format!("unknown config key '{key}' for {}", sub.get_name())))?;
        if matches!(key, "config") {
            continue;
        }
        if flag.get_action().takes_values() {
            injected.push(format!("--{key}={value}"));
        } else if value.parse::<bool>().map_err(|_| Error::Config(format!("'{key}' expects true or false")))? {
            injected.push(format!("--{key}"));
        }
    }
    let mut merged = args[..=pos].to_vec();
    merged.extend(injected);
    merged.extend_from_slice(&args[pos + 1..]);
    Ok(merged)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::Consistency(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let args = match merge_config(std::env::args().collect()) {
        Ok(args) => args,
        Err(e) => {
            eprintln!("amodem: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let cli = match Cli::command().try_get_matches_from(args).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| run(cli.command))),
        None => run(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("amodem: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
