//! The `SCTR` binary coefficient format and its JSON mirror.
//!
//! `SCTR` layout (all little-endian): magic `SCTR`, `u32` version 1, `u8`
//! scale mode (0 dyadic, 1 continuous), `u8` depth, `f64` q, `u32` scale
//! count, `u32` rotation count; when the rotation count exceeds 1 a `u8`
//! lattice flag follows (0 equivariant, 1 invariant). Then the scales, the
//! angles in radians (rotated lattices only), the coefficients in path
//! order, and the per-path weights in the same order, all as `f64`.

use serde::{Deserialize, Serialize};

use super::{scattering_norm, Lattice, ScatteringCoefficients, ScatteringPath};
use crate::error::{Result, ScatterError};
use crate::signal::io::Cursor;
use crate::wavelet::ScaleKind;

pub const SCTR_MAGIC: &[u8; 4] = b"SCTR";
pub const SCTR_VERSION: u32 = 1;

pub fn encode_sctr(s: &ScatteringCoefficients) -> Vec<u8> {
    let mut out = Vec::with_capacity(32 + 8 * (s.scale_count() + s.angles().len() + 2 * s.len()));
    out.extend_from_slice(SCTR_MAGIC);
    out.extend_from_slice(&SCTR_VERSION.to_le_bytes());
    out.push(match s.kind() {
        ScaleKind::Dyadic => 0,
        ScaleKind::Continuous => 1,
    });
    out.push(s.depth() as u8);
    out.extend_from_slice(&s.q().to_le_bytes());
    out.extend_from_slice(&(s.scale_count() as u32).to_le_bytes());
    out.extend_from_slice(&(s.rotation_count() as u32).to_le_bytes());
    if s.rotation_count() > 1 {
        out.push(match s.lattice() {
            Lattice::Invariant => 1,
            _ => 0,
        });
    }
    let mut put = |xs: &[f64]| {
        for x in xs {
            out.extend_from_slice(&x.to_le_bytes());
        }
    };
    put(s.scales());
    if s.rotation_count() > 1 {
        put(s.angles());
    }
    put(s.values());
    put(s.weights());
    out
}

pub fn decode_sctr(data: &[u8]) -> Result<ScatteringCoefficients> {
    let mut cur = Cursor::new(data);
    cur.read_magic(SCTR_MAGIC)?;
    let version = cur.read_u32()?;
    if version != SCTR_VERSION {
        return Err(ScatterError::Format(format!("unsupported SCTR version {version}")));
    }
    let kind = match cur.read_u8()? {
        0 => ScaleKind::Dyadic,
        1 => ScaleKind::Continuous,
        other => return Err(ScatterError::Format(format!("unknown scale mode {other}"))),
    };
    let m = cur.read_u8()? as usize;
    let q = cur.read_f64()?;
    let scales = cur.read_u32()? as usize;
    let rotations = cur.read_u32()? as usize;
    if rotations == 0 {
        return Err(ScatterError::Format("rotation count must be at least 1".into()));
    }
    let lattice = if rotations > 1 {
        match cur.read_u8()? {
            0 => Lattice::Equivariant,
            1 => Lattice::Invariant,
            other => return Err(ScatterError::Format(format!("unknown lattice flag {other}"))),
        }
    } else {
        Lattice::Plain
    };
    let count = super::coefficients::lattice_size(lattice, m, scales, rotations)
        .filter(|&c| c.checked_mul(16).is_some_and(|b| b <= cur.remaining()))
        .ok_or_else(|| ScatterError::Format("coefficient count does not match the payload".into()))?;
    let mut read = |k: usize| -> Result<Vec<f64>> { (0..k).map(|_| cur.read_f64()).collect() };
    let scale_list = read(scales)?;
    let angles = if rotations > 1 { read(rotations)? } else { Vec::new() };
    let values = read(count)?;
    let weights = read(count)?;
    cur.finish()?;
    ScatteringCoefficients::from_raw(kind, q, m, lattice, scale_list, angles, values, weights)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonPath {
    label: String,
    scales: Vec<usize>,
    rotations: Vec<usize>,
    value: f64,
    weight: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonCoefficients {
    mode: ScaleKind,
    q: f64,
    m: usize,
    lattice: Lattice,
    scales: Vec<f64>,
    angles: Vec<f64>,
    norm: f64,
    paths: Vec<JsonPath>,
}

/// JSON object with the same content as the `SCTR` encoding plus explicit
/// path labels and the scattering norm.
pub fn to_json(s: &ScatteringCoefficients) -> Result<String> {
    let doc = JsonCoefficients {
        mode: s.kind(),
        q: s.q(),
        m: s.depth(),
        lattice: s.lattice(),
        scales: s.scales().to_vec(),
        angles: s.angles().to_vec(),
        norm: scattering_norm(s),
        paths: s
            .iter()
            .map(|(path, value, weight)| JsonPath {
                label: path.label(s.lattice()),
                scales: path.scales,
                rotations: path.rotations,
                value,
                weight,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| ScatterError::Format(e.to_string()))
}

pub fn from_json(text: &str) -> Result<ScatteringCoefficients> {
    let doc: JsonCoefficients = serde_json::from_str(text).map_err(|e| ScatterError::Format(e.to_string()))?;
    let values = doc.paths.iter().map(|p| p.value).collect();
    let weights = doc.paths.iter().map(|p| p.weight).collect();
    let s = ScatteringCoefficients::from_raw(
        doc.mode,
        doc.q,
        doc.m,
        doc.lattice,
        doc.scales,
        doc.angles,
        values,
        weights,
    )?;
    for (i, p) in doc.paths.iter().enumerate() {
        let path = ScatteringPath::rotated(p.scales.clone(), p.rotations.clone());
        if s.index_of(&path)? != i {
            return Err(ScatterError::Format(format!("path {} is out of order", p.label)));
        }
    }
    Ok(s)
}
