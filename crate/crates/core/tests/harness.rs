mod common;

use std::process::Command;

use adaptive_modem::constellation::{Iq, Scheme};
use adaptive_modem::harness::{
    emit_csv, export_iq, export_iq_file, read_iq_file, run_ber_sweep, LinkReport, SampleData, SampleFile, SweepSpec,
    CSV_HEADER,
};
use adaptive_modem::waveform::RealSamples;
use proptest::prelude::*;

/// Minimal reader for the report CSV, written independently of the emitter.
fn parse_csv(text: &str) -> Vec<LinkReport> {
    let mut lines = text.split('\n');
    assert_eq!(lines.next(), Some(CSV_HEADER));
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 8, "{line}");
            LinkReport {
                scheme: f[0].parse().unwrap(),
                snr_db: f[1].parse().unwrap(),
                ebn0_db: f[2].parse().unwrap(),
                bits_sent: f[3].parse().unwrap(),
                bit_errors: f[4].parse().unwrap(),
                ber: f[5].parse().unwrap(),
                goodput_bps: f[6].parse().unwrap(),
                reliable: f[7].parse().unwrap(),
            }
        })
        .collect()
}

fn significant_digits(s: &str) -> usize {
    s.trim_start_matches(['0', '.']).chars().filter(char::is_ascii_digit).count()
}

fn report_strategy() -> impl Strategy<Value = LinkReport> {
    (
        prop::sample::select(Scheme::ALL.to_vec()),
        -50.0f64..50.0,
        1u64..10_000_000,
        0.0f64..1.0,
        0.0f64..1e8,
        any::<bool>(),
    )
        .prop_map(|(scheme, snr_db, bits_sent, frac, goodput_bps, reliable)| {
            let bit_errors = (bits_sent as f64 * frac * 0.5) as u64;
            LinkReport {
                scheme,
                snr_db,
                ebn0_db: snr_db - 3.0,
                bits_sent,
                bit_errors,
                ber: bit_errors as f64 / bits_sent as f64,
                goodput_bps,
                reliable,
            }
        })
}

#[test]
fn csv_empty_is_header_only() {
    let mut out = Vec::new();
    emit_csv(&[], &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), format!("{CSV_HEADER}\n"));
}

#[test]
fn csv_one_row_layout() {
    let r = LinkReport {
        scheme: Scheme::Qam16,
        snr_db: 12.5,
        ebn0_db: 6.5,
        bits_sent: 1_000_000,
        bit_errors: 7861,
        ber: 0.007861,
        goodput_bps: 3_968_556.0,
        reliable: true,
    };
    let mut out = Vec::new();
    emit_csv(&[r], &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text, format!("{CSV_HEADER}\nqam16,12.5,6.5,1000000,7861,0.00786100,3968556,true\n"));
    assert!(!text.contains('\r'));
}

proptest! {
    #[test]
    fn csv_round_trip(reports in prop::collection::vec(report_strategy(), 0..20)) {
        let mut out = Vec::new();
        emit_csv(&reports, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let parsed = parse_csv(&text);
        prop_assert_eq!(parsed.len(), reports.len());
        for (line, (p, r)) in text.lines().skip(1).zip(parsed.iter().zip(&reports)) {
            let ber_field = line.split(',').nth(5).unwrap();
            if r.ber != 0.0 {
                prop_assert_eq!(significant_digits(ber_field), 6, "{}", ber_field);
                prop_assert!((p.ber - r.ber).abs() <= r.ber * 5e-6);
            }
            let exact = LinkReport { ber: r.ber, ..p.clone() };
            prop_assert_eq!(&exact, r);
        }
    }
}

#[test]
fn iq_file_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.iq");
    let samples: Vec<Iq> = (0..37).map(|i| Iq::new(i as f64, -(i as f64))).collect();
    export_iq_file(SampleData::Complex { samples: &samples, sample_rate: 1e6 }, &path).unwrap();
    assert_eq!(std::fs::metadata(&path).unwrap().len(), 16 + 8 * 37);
    match read_iq_file(&path).unwrap() {
        SampleFile::Complex { samples: back, sample_rate } => {
            assert_eq!(back, samples);
            assert_eq!(sample_rate, 1e6);
        }
        other => panic!("unexpected {other:?}"),
    }
    let mut empty = Vec::new();
    export_iq(SampleData::Complex { samples: &[], sample_rate: 1.0 }, &mut empty).unwrap();
    assert_eq!(empty.len(), 16);
    let real = RealSamples { samples: vec![0.5; 10], sample_rate: 8000.0 };
    let rpath = dir.path().join("r.iq");
    export_iq_file(SampleData::Real(&real), &rpath).unwrap();
    assert_eq!(std::fs::metadata(&rpath).unwrap().len(), 16 + 4 * 10);
}

#[test]
fn unwritable_destination_is_io_error() {
    let err =
        export_iq_file(SampleData::Complex { samples: &[], sample_rate: 1.0 }, "/nonexistent/dir/x.iq").unwrap_err();
    assert!(matches!(err, adaptive_modem::Error::Io(_)));
}

#[test]
fn bpsk_at_zero_db_matches_q_function() {
    let r = run_ber_sweep(&SweepSpec::new(Scheme::Bpsk, vec![0.0], 1_000_000, 17)).unwrap();
    let p = common::ber_bpsk(0.0);
    assert!((r[0].ber - p).abs() <= 3.0 * common::binomial_sigma(p, 1_000_000), "{}", r[0].ber);
    assert!(r[0].reliable);
}

#[test]
fn ber_non_increasing_in_ebn0() {
    let points: Vec<f64> = (0..9).map(|i| i as f64).collect();
    for scheme in Scheme::ALL {
        let r = run_ber_sweep(&SweepSpec::new(scheme, points.clone(), 240_000, 5)).unwrap();
        for w in r.windows(2) {
            let slack = 3.0 * common::binomial_sigma(w[0].ber.max(1e-9), w[0].bits_sent);
            assert!(w[1].ber <= w[0].ber + slack, "{scheme}: {} -> {}", w[0].ber, w[1].ber);
        }
    }
}

#[test]
fn qpsk_ber_equals_bpsk_ber() {
    let points = vec![0.0, 2.0, 4.0, 6.0];
    let bpsk = run_ber_sweep(&SweepSpec::new(Scheme::Bpsk, points.clone(), 400_000, 8)).unwrap();
    let qpsk = run_ber_sweep(&SweepSpec::new(Scheme::Qpsk, points, 400_000, 8)).unwrap();
    for (a, b) in bpsk.iter().zip(&qpsk) {
        let sigma = 2f64.sqrt() * common::binomial_sigma(a.ber, a.bits_sent);
        assert!((a.ber - b.ber).abs() <= 3.0 * sigma, "{} vs {}", a.ber, b.ber);
    }
}

#[test]
fn scheme_ordering_at_fixed_es_n0() {
    let bits = 240_000;
    for es_n0 in [4.0, 10.0, 16.0] {
        let bers: Vec<f64> = Scheme::ALL
            .iter()
            .map(|&s| {
                let ebn0 = adaptive_modem::harness::esn0_to_ebn0(s, es_n0);
                run_ber_sweep(&SweepSpec::new(s, vec![ebn0], bits, 3)).unwrap()[0].ber
            })
            .collect();
        for w in bers.windows(2) {
            let slack = 3.0 * common::binomial_sigma(w[0].max(1e-9), bits);
            assert!(w[0] <= w[1] + slack, "{es_n0} dB: {bers:?}");
        }
    }
}

#[test]
fn sweep_noiseless_and_capacity() {
    for scheme in Scheme::ALL {
        let r = run_ber_sweep(&SweepSpec::new(scheme, vec![300.0, 0.0], 120_000, 1)).unwrap();
        assert_eq!(r[0].bit_errors, 0);
        for rep in &r {
            assert!(rep.goodput_bps <= scheme.bits_per_symbol() as f64 * 1e6);
            assert!(rep.bit_errors <= rep.bits_sent);
            assert_eq!(rep.ber, rep.bit_errors as f64 / rep.bits_sent as f64);
        }
    }
}

fn amodem() -> Command {
    Command::new(env!("CARGO_BIN_EXE_amodem"))
}

#[test]
fn cli_exit_codes() {
    let bad = amodem().args(["ber-sweep", "--scheme", "qam16", "--bits", "10001"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let unknown = amodem().args(["ber-sweep", "--scheme", "qam256"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let io = amodem()
        .args(["ber-sweep", "--scheme", "bpsk", "--bits", "10000", "--ebn0-stop", "0", "--out", "/nonexistent/x.csv"])
        .output()
        .unwrap();
    assert_eq!(io.status.code(), Some(3));
    let missing = amodem()
        .args(["synth", "--scheme", "bpsk", "--bits-file", "/nonexistent/bits", "--out", "/tmp/never.iq"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(3));
    let ok = amodem().args(["ber-sweep", "--scheme", "bpsk", "--bits", "10000", "--ebn0-stop", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with(CSV_HEADER));
}

#[test]
fn cli_config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(&cfg, "# sweep defaults\nscheme = qpsk\nbits = 20000\nebn0-start = 1\nebn0-stop = 3\n").unwrap();
    let out = amodem().args(["ber-sweep", "--config", cfg.to_str().unwrap(), "--bits", "30000"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = parse_csv(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.scheme == Scheme::Qpsk && r.bits_sent == 30_000));
    assert_eq!(rows[0].ebn0_db, 1.0);

    std::fs::write(&cfg, "schema = qpsk\n").unwrap();
    let bad = amodem().args(["ber-sweep", "--config", cfg.to_str().unwrap()]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cli_synth_files() {
    let dir = tempfile::tempdir().unwrap();
    let bits = dir.path().join("bits.txt");
    std::fs::write(&bits, "0001 1011\n").unwrap();
    let pass = dir.path().join("pass.iq");
    let st = amodem()
        .args(["synth", "--scheme", "qam16", "--bits-file", bits.to_str().unwrap(), "--out", pass.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(st.success());
    // two symbols of 32 real samples
    assert_eq!(std::fs::metadata(&pass).unwrap().len(), 16 + 4 * 64);
    let base = dir.path().join("base.iq");
    let st = amodem()
        .args(["synth", "--scheme", "dqpsk", "--random-bits", "20", "--baseband", "--out", base.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(st.success());
    match read_iq_file(&base).unwrap() {
        SampleFile::Complex { samples, sample_rate } => {
            assert_eq!(samples.len(), 10);
            assert_eq!(sample_rate, 1500.0);
        }
        other => panic!("unexpected {other:?}"),
    }
    let fsk = dir.path().join("fsk.iq");
    let st = amodem()
        .args(["synth", "--scheme", "fsk", "--random-bits", "5", "--out", fsk.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(st.success());
    assert!(matches!(read_iq_file(&fsk).unwrap(), SampleFile::Real(r) if r.len() == 160));
    let bad = amodem()
        .args(["synth", "--scheme", "qam16", "--random-bits", "5", "--out", fsk.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(bad.code(), Some(2));
}
