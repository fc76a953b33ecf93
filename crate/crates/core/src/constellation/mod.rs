//! Modulation alphabets and bit/symbol mapping.
//!
//! Every constellation is normalized to unit average symbol energy. Labels are
//! read most-significant-bit first from the bit stream. QPSK, 16-QAM and
//! 64-QAM are square grids with a reflected Gray code on each axis: the upper
//! half of the label selects the I level, the lower half the Q level. Level
//! index 0 on an axis is the most positive amplitude, so a zero bit keeps the
//! sign positive exactly like BPSK does.

mod differential;

pub use differential::{dqpsk_decode, dqpsk_encode, PhaseShift};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// One complex baseband sample per symbol.
pub type Iq = Complex64;

/// Bits are stored one per byte, each 0 or 1.
pub type Bit = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Bpsk,
    Qpsk,
    Qam16,
    Qam64,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Bpsk, Scheme::Qpsk, Scheme::Qam16, Scheme::Qam64];

    pub const fn order(self) -> usize {
        1 << self.bits_per_symbol()
    }

    pub const fn bits_per_symbol(self) -> usize {
        match self {
            Scheme::Bpsk => 1,
            Scheme::Qpsk => 2,
            Scheme::Qam16 => 4,
            Scheme::Qam64 => 6,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Scheme::Bpsk => "bpsk",
            Scheme::Qpsk => "qpsk",
            Scheme::Qam16 => "qam16",
            Scheme::Qam64 => "qam64",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "").as_str() {
            "bpsk" => Ok(Scheme::Bpsk),
            "qpsk" => Ok(Scheme::Qpsk),
            "qam16" | "16qam" => Ok(Scheme::Qam16),
            "qam64" | "64qam" => Ok(Scheme::Qam64),
            other => Err(Error::Parse(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Reflected binary Gray code.
pub const fn gray(n: usize) -> usize {
    n ^ (n >> 1)
}

/// Inverse of [`gray`].
pub const fn gray_inverse(mut g: usize) -> usize {
    let mut n = g;
    while g > 1 {
        g >>= 1;
        n ^= g;
    }
    n
}

/// A labeled, unit-energy set of baseband points.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    scheme: Scheme,
    /// Indexed by label.
    points: Vec<Iq>,
    /// Levels per axis of the square grid; 0 for BPSK.
    axis_levels: usize,
    scale: f64,
}

impl Constellation {
    pub fn new(scheme: Scheme) -> Self {
        match scheme {
            Scheme::Bpsk => Constellation {
                scheme,
                points: vec![Iq::new(1.0, 0.0), Iq::new(-1.0, 0.0)],
                axis_levels: 0,
                scale: 1.0,
            },
            _ => {
                let k = scheme.bits_per_symbol();
                let levels = 1usize << (k / 2);
                // mean energy of the odd-integer grid is 2(M-1)/3
                let scale = (3.0 / (2.0 * (scheme.order() as f64 - 1.0))).sqrt();
                let points = (0..scheme.order())
                    .map(|label| {
                        let i_label = label >> (k / 2);
                        let q_label = label & (levels - 1);
                        Iq::new(
                            axis_amplitude(gray_inverse(i_label), levels) * scale,
                            axis_amplitude(gray_inverse(q_label), levels) * scale,
                        )
                    })
                    .collect();
                Constellation { scheme, points, axis_levels: levels, scale }
            }
        }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.scheme.bits_per_symbol()
    }

    /// Points indexed by label.
    pub fn points(&self) -> &[Iq] {
        &self.points
    }

    pub fn point(&self, label: usize) -> Iq {
        self.points[label]
    }

    /// Factor applied to the odd-integer grid to reach unit average energy.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn average_energy(&self) -> f64 {
        self.points.iter().map(|p| p.norm_sqr()).sum::<f64>() / self.points.len() as f64
    }

    /// Maps bits to symbols, `k` bits per symbol, MSB first.
    pub fn map_bits(&self, bits: &[Bit]) -> Result<Vec<Iq>> {
        let k = self.bits_per_symbol();
        if !bits.len().is_multiple_of(k) {
            return Err(Error::Length { len: bits.len(), multiple: k });
        }
        check_bits(bits)?;
        Ok(bits.chunks_exact(k).map(|chunk| self.points[bits_to_label(chunk)]).collect())
    }

    /// Nearest-point hard decision. Equidistant points resolve to the lowest
    /// label.
    pub fn demap_hard(&self, samples: &[Iq]) -> Result<Vec<Bit>> {
        let k = self.bits_per_symbol();
        let mut bits = Vec::with_capacity(samples.len() * k);
        for (index, s) in samples.iter().enumerate() {
            if !s.re.is_finite() || !s.im.is_finite() {
                return Err(Error::InvalidSample { index, reason: "non-finite component" });
            }
            let label = self.decide(*s);
            push_label(&mut bits, label, k);
        }
        Ok(bits)
    }

    /// Label of the nearest point for a finite sample.
    pub fn decide(&self, s: Iq) -> usize {
        match self.scheme {
            // tie at the origin goes to label 0
            Scheme::Bpsk => usize::from(s.re < 0.0),
            _ => {
                let half = self.bits_per_symbol() / 2;
                let i_label = slice_axis(s.re / self.scale, self.axis_levels);
                let q_label = slice_axis(s.im / self.scale, self.axis_levels);
                (i_label << half) | q_label
            }
        }
    }
}

/// Amplitude of level `index` on an axis with `levels` odd-integer levels,
/// index 0 being the most positive.
fn axis_amplitude(index: usize, levels: usize) -> f64 {
    (levels as f64 - 1.0) - 2.0 * index as f64
}

/// Per-axis slicer in odd-integer units. Returns the Gray label of the nearest
/// level; on an exact midpoint the lower of the two labels wins.
fn slice_axis(x: f64, levels: usize) -> usize {
    let top = levels as f64 - 1.0;
    // continuous level index: amplitude top -> 0, -top -> levels-1
    let pos = ((top - x) / 2.0).clamp(0.0, top);
    let lower = pos.floor();
    let frac = pos - lower;
    let lower = lower as usize;
    if lower + 1 >= levels {
        return gray(levels - 1);
    }
    if frac < 0.5 {
        gray(lower)
    } else if frac > 0.5 {
        gray(lower + 1)
    } else {
        gray(lower).min(gray(lower + 1))
    }
}

pub(crate) fn check_bits(bits: &[Bit]) -> Result<()> {
    match bits.iter().position(|&b| b > 1) {
        Some(index) => Err(Error::InvalidBit { index, value: bits[index] }),
        None => Ok(()),
    }
}

/// Reads a label MSB first.
pub fn bits_to_label(bits: &[Bit]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

/// Appends `k` bits of `label`, MSB first.
pub fn push_label(out: &mut Vec<Bit>, label: usize, k: usize) {
    out.extend((0..k).rev().map(|shift| ((label >> shift) & 1) as Bit));
}

/// Parses a string of `0`/`1` characters, ignoring whitespace and `_`.
pub fn parse_bits(text: &str) -> Result<Vec<Bit>> {
    text.chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Parse(format!("unexpected character '{other}' in bit string"))),
        })
        .collect()
}

pub fn build_constellation(scheme: Scheme) -> Constellation {
    Constellation::new(scheme)
}

pub fn map_bits(c: &Constellation, bits: &[Bit]) -> Result<Vec<Iq>> {
    c.map_bits(bits)
}

pub fn demap_hard(c: &Constellation, samples: &[Iq]) -> Result<Vec<Bit>> {
    c.demap_hard(samples)
}
