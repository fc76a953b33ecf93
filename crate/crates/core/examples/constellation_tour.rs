//! Prints every constellation with its labels, phase and amplitude, and
//! checks the unit-energy normalization.
//!
//! Run with: cargo run --example constellation_tour

use adaptive_modem::prelude::*;

fn main() {
    for scheme in Scheme::ALL {
        let c = Constellation::new(scheme);
        println!(
            "== {scheme}: M = {}, k = {}, mean energy = {:.12}",
            c.order(),
            c.bits_per_symbol(),
            c.average_energy()
        );
        if c.order() > 16 {
            println!("   ({} points, showing the first 8)", c.order());
        }
        for (label, p) in c.points().iter().enumerate().take(if c.order() > 16 { 8 } else { 16 }) {
            println!(
                "   {label:0width$b}  I={:+.4} Q={:+.4}  |s|={:.4}  phase={:6.1} deg",
                p.re,
                p.im,
                p.norm(),
                p.arg().to_degrees().rem_euclid(360.0),
                width = c.bits_per_symbol()
            );
        }
    }

    let c = Constellation::new(Scheme::Qam16);
    let bits = [0, 0, 0, 1, 1, 0, 1, 1];
    let syms = c.map_bits(&bits).unwrap();
    println!("\n16-QAM {bits:?} -> {syms:.4?}");
    println!("demapped back: {:?}", c.demap_hard(&syms).unwrap());
}
