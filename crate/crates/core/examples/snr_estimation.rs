//! Adds AWGN at several Es/N0 values and recovers them with the data-aided
//! estimator, then shows that chunked noise matches a single call.
//!
//! Run with: cargo run --example snr_estimation

use adaptive_modem::channel::apply_awgn_at;
use adaptive_modem::prelude::*;
use adaptive_modem::rng;

fn main() -> Result<()> {
    let c = Constellation::new(Scheme::Qam64);
    let tx = c.map_bits(&rng::random_bits(3, 0, 6 * 100_000))?;
    for es_n0 in [0.0, 5.0, 10.0, 20.0, 30.0] {
        let rx = apply_awgn(&tx, &ChannelConfig::new(es_n0, 11))?;
        println!("configured {es_n0:5.1} dB, estimated {:6.2} dB", estimate_snr(&rx, &tx)?);
    }

    let cfg = ChannelConfig::new(8.0, 5);
    let whole = apply_awgn(&tx[..1000], &cfg)?;
    let mut chunked = apply_awgn_at(&tx[..400], &cfg, 0)?;
    chunked.extend(apply_awgn_at(&tx[400..1000], &cfg, 400)?);
    println!("chunked noise identical to one call: {}", whole == chunked);
    Ok(())
}
