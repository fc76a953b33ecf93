//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's decision or noise paths.

#![allow(dead_code)]

use num_complex::Complex64;
use statrs::function::erf::erfc;

/// Gaussian tail probability.
pub fn q(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

pub fn db_to_lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// BPSK (and Gray QPSK) bit error probability at `ebn0_db`.
pub fn ber_bpsk(ebn0_db: f64) -> f64 {
    q((2.0 * db_to_lin(ebn0_db)).sqrt())
}

/// Gray 16-QAM bit error probability, summing the three per-axis
/// crossing distances of 4-PAM.
pub fn ber_qam16(ebn0_db: f64) -> f64 {
    let a = (0.8 * db_to_lin(ebn0_db)).sqrt();
    (3.0 * q(a) + 2.0 * q(3.0 * a) - q(5.0 * a)) / 4.0
}

/// Eb/N0 in dB at which BPSK reaches `target`, by bisection on the oracle.
pub fn solve_bpsk_ebn0_db(target: f64) -> f64 {
    let (mut lo, mut hi) = (-10.0, 20.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ber_bpsk(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Binomial standard deviation of a BER estimate over `n` bits.
pub fn binomial_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Label of the nearest point by scanning every distance; lowest label on
/// ties.
pub fn brute_nearest(points: &[Complex64], s: Complex64) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (label, p) in points.iter().enumerate() {
        let d = (s - p).norm_sqr();
        if d < best_d {
            best = label;
            best_d = d;
        }
    }
    best
}

/// Number of zero crossings of one periodic segment, treating it as cyclic.
/// A sample that is numerically zero counts as one crossing; otherwise a sign
/// change between neighbours counts.
pub fn cyclic_zero_crossings(x: &[f64]) -> usize {
    let eps = 1e-9;
    let sign = |v: f64| {
        if v.abs() < eps {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };
    let n = x.len();
    let zeros = x.iter().filter(|v| sign(**v) == 0).count();
    let changes = (0..n)
        .filter(|&i| {
            let (a, b) = (sign(x[i]), sign(x[(i + 1) % n]));
            a != 0 && b != 0 && a != b
        })
        .count();
    zeros + changes
}

/// Magnitude of the correlation of `x` with a complex tone at `f`.
pub fn tone_power(x: &[f64], f: f64, fs: f64) -> f64 {
    let w = std::f64::consts::TAU * f / fs;
    let (re, im) = x
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(re, im), (n, v)| (re + v * (w * n as f64).cos(), im - v * (w * n as f64).sin()));
    (re * re + im * im).sqrt()
}

#[test]
fn oracle_reference_values() {
    assert!((ber_bpsk(0.0) - 0.0786).abs() < 1e-4);
    assert!((ber_bpsk(4.0) - 0.0125).abs() < 1e-4);
    let t = solve_bpsk_ebn0_db(1e-3);
    assert!((t - 6.79).abs() < 0.01, "{t}");
}
