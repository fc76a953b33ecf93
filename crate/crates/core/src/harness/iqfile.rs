//! Binary sample files.
//!
//! A 16-byte header followed by little-endian `f32` payload:
//!
//! | offset | size | field                                  |
//! |--------|------|----------------------------------------|
//! | 0      | 4    | magic `IQF1`                           |
//! | 4      | 1    | kind: 0 = complex (I,Q interleaved), 1 = real |
//! | 5      | 3    | reserved, zero                         |
//! | 8      | 8    | sample rate in Hz, `f64` little-endian |

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::constellation::Iq;
use crate::error::{Error, Result};
use crate::waveform::RealSamples;

pub const MAGIC: &[u8; 4] = b"IQF1";
pub const HEADER_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum SampleKind {
    Complex = 0,
    Real = 1,
}

/// Borrowed samples to export.
#[derive(Debug, Clone, Copy)]
pub enum SampleData<'a> {
    Complex { samples: &'a [Iq], sample_rate: f64 },
    Real(&'a RealSamples),
}

/// Samples read back from a file, widened to `f64`.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleFile {
    Complex { samples: Vec<Iq>, sample_rate: f64 },
    Real(RealSamples),
}

fn header(kind: SampleKind, sample_rate: f64) -> [u8; HEADER_LEN] {
    let mut h = [0u8; HEADER_LEN];
    h[..4].copy_from_slice(MAGIC);
    h[4] = kind as u8;
    h[8..].copy_from_slice(&sample_rate.to_le_bytes());
    h
}

pub fn export_iq<W: Write>(data: SampleData<'_>, mut out: W) -> Result<()> {
    match data {
        SampleData::Complex { samples, sample_rate } => {
            out.write_all(&header(SampleKind::Complex, sample_rate))?;
            for s in samples {
                out.write_all(&(s.re as f32).to_le_bytes())?;
                out.write_all(&(s.im as f32).to_le_bytes())?;
            }
        }
        SampleData::Real(real) => {
            out.write_all(&header(SampleKind::Real, real.sample_rate))?;
            for x in &real.samples {
                out.write_all(&(*x as f32).to_le_bytes())?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn export_iq_file(data: SampleData<'_>, path: impl AsRef<Path>) -> Result<()> {
    export_iq(data, BufWriter::new(File::create(path)?))
}

pub fn read_iq<R: Read>(mut input: R) -> Result<SampleFile> {
    let mut h = [0u8; HEADER_LEN];
    input.read_exact(&mut h)?;
    if &h[..4] != MAGIC {
        return Err(Error::Parse("not an IQF1 file".into()));
    }
    if h[5..8] != [0, 0, 0] {
        return Err(Error::Parse("reserved header bytes are not zero".into()));
    }
    let sample_rate = f64::from_le_bytes(h[8..].try_into().expect("8-byte slice"));
    let mut payload = Vec::new();
    input.read_to_end(&mut payload)?;
    if !payload.len().is_multiple_of(4) {
        return Err(Error::Parse("payload is not a whole number of f32 values".into()));
    }
    let values: Vec<f64> =
        payload.chunks_exact(4).map(|b| f64::from(f32::from_le_bytes(b.try_into().expect("4-byte chunk")))).collect();
    match h[4] {
        0 => {
            if !values.len().is_multiple_of(2) {
                return Err(Error::Parse("complex payload has an odd value count".into()));
            }
            Ok(SampleFile::Complex {
                samples: values.chunks_exact(2).map(|v| Iq::new(v[0], v[1])).collect(),
                sample_rate,
            })
        }
        1 => Ok(SampleFile::Real(RealSamples { samples: values, sample_rate })),
        kind => Err(Error::Parse(format!("unknown sample kind {kind}"))),
    }
}

pub fn read_iq_file(path: impl AsRef<Path>) -> Result<SampleFile> {
    read_iq(std::io::BufReader::new(File::open(path)?))
}
