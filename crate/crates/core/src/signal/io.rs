//! The `SIGF` binary signal format and CSV ingestion for 1D signals.
//!
//! `SIGF` layout (all little-endian): magic `SIGF`, `u32` version 1, `u8`
//! dimension count, one `u32` extent per dimension, `f64` spacing, then the
//! samples as interleaved `(re, im)` `f64` pairs in row-major order.

use std::io::{Read, Write};

use num_complex::Complex64;

use super::{Grid, Signal};
use crate::error::{Result, ScatterError};

pub const SIGF_MAGIC: &[u8; 4] = b"SIGF";
pub const SIGF_VERSION: u32 = 1;

/// Encode a signal as `SIGF` bytes.
pub fn encode_sigf(signal: &Signal) -> Vec<u8> {
    let grid = signal.grid();
    let mut out = Vec::with_capacity(17 + 8 * grid.n_dims() + 16 * grid.len());
    out.extend_from_slice(SIGF_MAGIC);
    out.extend_from_slice(&SIGF_VERSION.to_le_bytes());
    out.push(grid.n_dims() as u8);
    for &e in grid.extents() {
        out.extend_from_slice(&(e as u32).to_le_bytes());
    }
    out.extend_from_slice(&grid.spacing().to_le_bytes());
    for z in signal.samples() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn write_sigf(signal: &Signal, mut writer: impl Write) -> Result<()> {
    writer.write_all(&encode_sigf(signal))?;
    Ok(())
}

/// Little-endian reader shared by the binary formats of this crate.
pub(crate) struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    pub(crate) fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| ScatterError::Format(format!("truncated input at byte {}", self.pos)))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    pub(crate) fn read_u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub(crate) fn read_u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub(crate) fn read_f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub(crate) fn read_magic(&mut self, magic: &[u8; 4]) -> Result<()> {
        if self.take(4)? != magic {
            return Err(ScatterError::Format(format!(
                "bad magic, expected {:?}",
                std::str::from_utf8(magic).unwrap_or("?")
            )));
        }
        Ok(())
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(ScatterError::Format(format!("{} trailing bytes", self.remaining())));
        }
        Ok(())
    }
}

/// Decode `SIGF` bytes.
pub fn decode_sigf(data: &[u8]) -> Result<Signal> {
    let mut cur = Cursor::new(data);
    cur.read_magic(SIGF_MAGIC)?;
    let version = cur.read_u32()?;
    if version != SIGF_VERSION {
        return Err(ScatterError::Format(format!("unsupported SIGF version {version}")));
    }
    let dims = cur.read_u8()? as usize;
    if !(1..=2).contains(&dims) {
        return Err(ScatterError::Format(format!("unsupported dimension count {dims}")));
    }
    let mut extents = Vec::with_capacity(dims);
    for _ in 0..dims {
        extents.push(cur.read_u32()? as usize);
    }
    let spacing = cur.read_f64()?;
    let grid = Grid::new(&extents, spacing)?;
    let expected = grid
        .len()
        .checked_mul(16)
        .ok_or_else(|| ScatterError::Format("sample count overflows".into()))?;
    if cur.remaining() != expected {
        return Err(ScatterError::Format(format!(
            "expected {expected} sample bytes, found {}",
            cur.remaining()
        )));
    }
    let mut samples = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        let re = cur.read_f64()?;
        let im = cur.read_f64()?;
        samples.push(Complex64::new(re, im));
    }
    cur.finish()?;
    Signal::new(grid, samples)
}

pub fn read_sigf(mut reader: impl Read) -> Result<Signal> {
    let mut buf = Vec::new();
    reader.read_to_end(&mut buf)?;
    decode_sigf(&buf)
}

/// Read a 1D signal from CSV lines holding `re,im` or `re`.
pub fn read_csv_1d(reader: impl Read, spacing: f64) -> Result<Signal> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut samples = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| ScatterError::Format(format!("csv line {}: {e}", line + 1)))?;
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| ScatterError::Format(format!("csv line {}: {e}", line + 1)))
        };
        let z = match record.len() {
            1 => Complex64::new(parse(&record[0])?, 0.0),
            2 => Complex64::new(parse(&record[0])?, parse(&record[1])?),
            k => {
                return Err(ScatterError::Format(format!(
                    "csv line {}: expected 1 or 2 fields, got {k}",
                    line + 1
                )))
            }
        };
        samples.push(z);
    }
    let grid = Grid::new_1d(samples.len(), spacing)?;
    Signal::new(grid, samples)
}
