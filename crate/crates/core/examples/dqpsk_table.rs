//! Differential QPSK: the dibit to phase-shift table, a short encoded burst,
//! and decoding through an unknown constant carrier rotation.
//!
//! Run with: cargo run --example dqpsk_table

use adaptive_modem::prelude::*;

fn main() {
    println!("dibit  shift");
    for shift in PhaseShift::ALL {
        let [a, b] = shift.dibit();
        println!("  {a}{b}   {:>3} deg", shift.degrees());
    }

    let bits = [0, 1, 1, 0, 1, 1, 0, 0, 0, 1];
    let syms = dqpsk_encode(&bits, 0.0).unwrap();
    println!("\nbits {bits:?}");
    for (i, s) in syms.iter().enumerate() {
        println!("  symbol {i}: phase {:5.1} deg", s.arg().to_degrees().rem_euclid(360.0));
    }

    // the receiver's carrier is off by 90 degrees: only the first dibit suffers
    let rot = Iq::from_polar(1.0, 90f64.to_radians());
    let rotated: Vec<Iq> = syms.iter().map(|s| s * rot).collect();
    println!("decoded:                {:?}", dqpsk_decode(&syms, 0.0).unwrap());
    println!("decoded, rotated 90:    {:?}", dqpsk_decode(&rotated, 0.0).unwrap());
    println!("decoded, rotated + ref: {:?}", dqpsk_decode(&rotated, 90.0).unwrap());
}
