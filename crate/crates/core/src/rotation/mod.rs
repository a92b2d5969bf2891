//! Rotations of the plane: sampled rotation groups, signal rotation, and
//! the rotation-equivariant and rotation-invariant scattering transforms.
//!
//! With filters `psi_{l,k}(x) = psi_l(R_k^-1 x)`, rotating the input by
//! `R_t` permutes the equivariant coefficients:
//!
//! ```text
//! S[f(R_t^-1 .)](l_1, k_1, ..., l_m, k_m) = S[f](l_1, k_1 - t, ..., l_m, k_m - t)
//! ```
//!
//! (angle indices mod `N`). The invariant transform sums the first angle
//! out along this diagonal action,
//!
//! ```text
//! I f(l_1, ..., l_m, a_2, ..., a_m) = sum_k mu/N S f(l_1, k, l_2, a_2 + k, ..., l_m, a_m + k),
//! ```
//!
//! so a rotation by a grid angle only relabels the summands.

pub mod grid;

pub use grid::RotationGrid;

use serde::Serialize;

use crate::deform::TrigInterpolant;
use crate::error::{Result, ScatterError};
use crate::scattering::{scatter, scattering_norm, Lattice, ScatteringCoefficients, ScatteringPath};
use crate::signal::{Contraction, Signal};
use grid::{cos_sin, rotate_inverse};

fn require_2d(f: &Signal) -> Result<()> {
    if f.grid().n_dims() == 2 {
        Ok(())
    } else {
        Err(ScatterError::Dimension(format!(
            "rotations act on 2D signals, got {} dimensions",
            f.grid().n_dims()
        )))
    }
}

/// `f_R(x) = f(R_theta^-1 x)`. Quarter turns of a square grid permute
/// samples exactly; other angles evaluate the trigonometric interpolant.
pub fn rotate_signal(f: &Signal, theta: f64) -> Result<Signal> {
    require_2d(f)?;
    let grid = *f.grid();
    let quarter = theta / (std::f64::consts::PI / 2.0);
    let q = quarter.round();
    if (quarter - q).abs() < 1e-12 && grid.extent(0) == grid.extent(1) {
        let turns = (q as i64).rem_euclid(4);
        if turns == 0 {
            return Ok(f.clone());
        }
        let samples = (0..grid.len())
            .map(|flat| {
                let idx = grid.unravel(flat);
                let a = grid.wrapped_index(0, idx[0]);
                let b = grid.wrapped_index(1, idx[1]);
                let (s0, s1) = match turns {
                    1 => (b, -a),
                    2 => (-a, -b),
                    _ => (-b, a),
                };
                f.samples()[grid.ravel([grid.modulo(0, s0), grid.modulo(1, s1)])]
            })
            .collect();
        return Signal::new(grid, samples);
    }
    let cs = cos_sin(theta);
    let points: Vec<[f64; 2]> = (0..grid.len()).map(|i| rotate_inverse(grid.position(i), cs)).collect();
    Signal::new(grid, TrigInterpolant::new(f).eval_many(&points))
}

fn require_rotations(bank: &crate::wavelet::FilterBank) -> Result<RotationGrid> {
    bank.rotations()
        .copied()
        .ok_or_else(|| ScatterError::Config("the filter bank has no rotation grid".into()))
}

/// Full `(scale, angle)^m` lattice of a rotated bank.
pub fn equivariant_scatter(
    f: &Signal,
    bank: &crate::wavelet::FilterBank,
    m: usize,
    q: f64,
    kappa: Contraction,
) -> Result<ScatteringCoefficients> {
    require_2d(f)?;
    require_rotations(bank)?;
    scatter(f, bank, m, q, kappa)
}

/// Integrate the first angle out of an equivariant lattice.
pub fn integrate_first_rotation(e: &ScatteringCoefficients, haar_weight: f64) -> Result<ScatteringCoefficients> {
    if e.lattice() != Lattice::Equivariant {
        return Err(ScatterError::Config(
            "expected an equivariant coefficient lattice".into(),
        ));
    }
    let n = e.rotation_count();
    let s = e.scale_count();
    let m = e.depth();
    let count = s.pow(m as u32) * n.pow(m as u32 - 1);
    let mut values = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    // Invariant storage order: scale of layer 1, then (scale, relative angle)
    // for each later layer.
    for idx in 0..count {
        let mut rest = idx;
        let mut later = vec![(0usize, 0usize); m - 1];
        for l in (0..m - 1).rev() {
            let d = rest % (s * n);
            rest /= s * n;
            later[l] = (d / n, d % n);
        }
        let s1 = rest;
        let mut acc = 0.0;
        let mut weight = 0.0;
        for k in 0..n {
            let mut scales = vec![s1];
            let mut rots = vec![k];
            for &(sl, al) in &later {
                scales.push(sl);
                rots.push((al + k) % n);
            }
            let i = e.index_of(&ScatteringPath::rotated(scales, rots))?;
            acc += haar_weight * e.values()[i];
            if k == 0 {
                weight = e.weights()[i] / haar_weight;
            }
        }
        values.push(acc);
        weights.push(weight);
    }
    Ok(e.with_values(Lattice::Invariant, values, weights))
}

/// Rotation-invariant coefficients over `scales^m x angles^(m-1)`.
pub fn invariant_scatter(
    f: &Signal,
    bank: &crate::wavelet::FilterBank,
    m: usize,
    q: f64,
    kappa: Contraction,
) -> Result<ScatteringCoefficients> {
    let e = equivariant_scatter(f, bank, m, q, kappa)?;
    if bank.rotation_count() == 1 {
        return Ok(e);
    }
    integrate_first_rotation(&e, bank.haar_weight())
}

/// Largest discrepancy found by a rotation check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationCheck {
    pub max_abs: f64,
    /// `max_abs` divided by the largest coefficient magnitude.
    pub max_rel: f64,
}

fn compare(a: &[f64], b: &[f64]) -> RotationCheck {
    let max_abs = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let scale = a.iter().chain(b).map(|v| v.abs()).fold(0.0, f64::max);
    RotationCheck {
        max_abs,
        max_rel: if scale > 0.0 { max_abs / scale } else { max_abs },
    }
}

/// Compare the equivariant coefficients of `f` rotated by the grid angle
/// `theta` with those of `f` at angles shifted back by `theta`.
pub fn equivariance_check(
    f: &Signal,
    bank: &crate::wavelet::FilterBank,
    theta: f64,
    m: usize,
    q: f64,
    kappa: Contraction,
) -> Result<RotationCheck> {
    let rot = require_rotations(bank)?;
    let t = rot.index_of(theta)?;
    let n = rot.count();
    let base = equivariant_scatter(f, bank, m, q, kappa)?;
    let turned = equivariant_scatter(&rotate_signal(f, theta)?, bank, m, q, kappa)?;
    let shifted: Vec<f64> = (0..turned.len())
        .map(|i| {
            let p = turned.path(i);
            let back = ScatteringPath::rotated(p.scales, p.rotations.iter().map(|r| (r + n - t) % n).collect());
            base.get(&back)
        })
        .collect::<Result<_>>()?;
    Ok(compare(turned.values(), &shifted))
}

/// Compare invariant coefficients of `f` and of `f` rotated by `theta`.
pub fn invariance_check(
    f: &Signal,
    bank: &crate::wavelet::FilterBank,
    theta: f64,
    m: usize,
    q: f64,
    kappa: Contraction,
) -> Result<RotationCheck> {
    require_rotations(bank)?.index_of(theta)?;
    let a = invariant_scatter(f, bank, m, q, kappa)?;
    let b = invariant_scatter(&rotate_signal(f, theta)?, bank, m, q, kappa)?;
    Ok(compare(a.values(), b.values()))
}

/// Weighted `p`-norm of an equivariant lattice (Haar and scale weights).
pub fn equivariant_norm(e: &ScatteringCoefficients) -> f64 {
    scattering_norm(e)
}

/// Weighted `p`-norm of an invariant lattice.
pub fn invariant_norm(i: &ScatteringCoefficients) -> f64 {
    scattering_norm(i)
}
