//! Differential QPSK: each dibit selects a phase shift relative to the
//! previous symbol.
//!
//! | dibit | shift |
//! |-------|-------|
//! | 00    | 0°    |
//! | 01    | 90°   |
//! | 11    | 180°  |
//! | 10    | 270°  |

use super::{check_bits, Bit, Iq};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseShift {
    Deg0,
    Deg90,
    Deg180,
    Deg270,
}

impl PhaseShift {
    /// In ascending order of shift.
    pub const ALL: [PhaseShift; 4] = [PhaseShift::Deg0, PhaseShift::Deg90, PhaseShift::Deg180, PhaseShift::Deg270];

    pub const fn degrees(self) -> u32 {
        match self {
            PhaseShift::Deg0 => 0,
            PhaseShift::Deg90 => 90,
            PhaseShift::Deg180 => 180,
            PhaseShift::Deg270 => 270,
        }
    }

    pub fn from_dibit(hi: Bit, lo: Bit) -> PhaseShift {
        match (hi, lo) {
            (0, 0) => PhaseShift::Deg0,
            (0, 1) => PhaseShift::Deg90,
            (1, 1) => PhaseShift::Deg180,
            _ => PhaseShift::Deg270,
        }
    }

    pub const fn dibit(self) -> [Bit; 2] {
        match self {
            PhaseShift::Deg0 => [0, 0],
            PhaseShift::Deg90 => [0, 1],
            PhaseShift::Deg180 => [1, 1],
            PhaseShift::Deg270 => [1, 0],
        }
    }

    /// Nearest shift to an arbitrary angle in degrees. An angle equidistant
    /// from two shifts resolves to the smaller shift value.
    pub fn quantize(angle_deg: f64) -> PhaseShift {
        let angle = angle_deg.rem_euclid(360.0);
        let mut best = PhaseShift::Deg0;
        let mut best_dist = f64::INFINITY;
        for shift in PhaseShift::ALL {
            let d = (angle - f64::from(shift.degrees())).abs();
            let d = d.min(360.0 - d);
            if d < best_dist {
                best = shift;
                best_dist = d;
            }
        }
        best
    }
}

fn unit_at(deg: f64) -> Iq {
    // exact axes for the common multiples of 90 degrees
    match deg.rem_euclid(360.0) {
        0.0 => Iq::new(1.0, 0.0),
        90.0 => Iq::new(0.0, 1.0),
        180.0 => Iq::new(-1.0, 0.0),
        270.0 => Iq::new(0.0, -1.0),
        d => Iq::from_polar(1.0, d.to_radians()),
    }
}

/// Encodes dibits as unit-magnitude symbols; the first shift is applied to
/// `reference_deg`.
pub fn dqpsk_encode(bits: &[Bit], reference_deg: f64) -> Result<Vec<Iq>> {
    if !bits.len().is_multiple_of(2) {
        return Err(Error::Length { len: bits.len(), multiple: 2 });
    }
    check_bits(bits)?;
    let mut phase = reference_deg.rem_euclid(360.0);
    Ok(bits
        .chunks_exact(2)
        .map(|d| {
            phase = (phase + f64::from(PhaseShift::from_dibit(d[0], d[1]).degrees())).rem_euclid(360.0);
            unit_at(phase)
        })
        .collect())
}

/// Recovers dibits from phase differences between consecutive symbols, the
/// symbol before the first being a unit vector at `reference_deg`.
pub fn dqpsk_decode(symbols: &[Iq], reference_deg: f64) -> Result<Vec<Bit>> {
    let mut prev = unit_at(reference_deg);
    let mut bits = Vec::with_capacity(symbols.len() * 2);
    for (index, &s) in symbols.iter().enumerate() {
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::InvalidSample { index, reason: "non-finite component" });
        }
        if s.norm_sqr() == 0.0 {
            return Err(Error::InvalidSample { index, reason: "zero magnitude, phase undefined" });
        }
        let diff = (s * prev.conj()).arg().to_degrees();
        bits.extend_from_slice(&PhaseShift::quantize(diff).dibit());
        prev = s;
    }
    Ok(bits)
}
