//! Baseband modem and adaptive-modulation link simulator.
//!
//! - [`constellation`]: BPSK, QPSK, 16-QAM and 64-QAM mapping with Gray
//!   labels, hard demapping, and differential QPSK.
//! - [`waveform`]: sampled ASK, FSK and PSK/QAM passband synthesis and
//!   coherent demodulation.
//! - [`channel`]: seeded AWGN, log-distance path loss, data-aided SNR
//!   estimation.
//! - [`amc`]: Monte-Carlo threshold derivation for a target BER and the
//!   hysteresis scheme selector.
//! - [`harness`]: BER sweeps, adaptive range simulation, CSV and `IQF1`
//!   sample files.
//!
//! ```
//! use adaptive_modem::prelude::*;
//!
//! let c = Constellation::new(Scheme::Qam16);
//! let bits = [1, 0, 1, 1, 0, 0, 0, 1];
//! let tx = c.map_bits(&bits).unwrap();
//! let rx = apply_awgn(&tx, &ChannelConfig::new(30.0, 7)).unwrap();
//! assert_eq!(c.demap_hard(&rx).unwrap(), bits);
//! ```

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amc;
pub mod channel;
pub mod config;
pub mod constellation;
pub mod error;
pub mod harness;
pub mod rng;
pub mod sim;
pub mod waveform;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::amc::{
        derive_thresholds, select_scheme, throughput_bits_per_sec, AmcController, AmcPolicy, LinkState, PolicyEntry,
    };
    pub use crate::channel::{apply_awgn, estimate_snr, snr_from_distance, ChannelConfig, PathLossModel};
    pub use crate::constellation::{dqpsk_decode, dqpsk_encode, Bit, Constellation, Iq, PhaseShift, Scheme};
    pub use crate::error::{Error, Result};
    pub use crate::harness::{run_ber_sweep, run_range_sim, LinkReport, RangeSimSpec, SweepSpec};
    pub use crate::waveform::{demod_coherent, synth_ask, synth_fsk, synth_psk_qam, PassbandParams, RealSamples};
}
