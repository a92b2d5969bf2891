//! The m-layer scattering cascade, its propagator, and the weighted
//! scattering norms and distances.
//!
//! For a path `p = (i_1, ..., i_m)` of filter indices the coefficient is
//!
//! ```text
//! S f(p) = || k(... k(k(f * psi_{i_1}) * psi_{i_2}) ...) * psi_{i_m} ||_q^q
//! ```
//!
//! with the contraction `k` applied between layers only. The norm of a
//! coefficient set is `(sum_p w_p S f(p)^r)^(1/r)` with `r = 2/q`, where
//! `w_p` multiplies the per-layer scale and Haar weights.

mod coefficients;
pub mod io;

pub use coefficients::{Lattice, ScatteringCoefficients, ScatteringPath};

use rayon::prelude::*;

use crate::error::{Result, ScatterError};
use crate::signal::{apply_contraction, ensure_same_grid, lq_norm_pow, Contraction, Signal, Spectrum};
use crate::wavelet::FilterBank;

/// Largest number of coefficients a single transform may produce.
pub const MAX_COEFFICIENTS: usize = 1 << 26;

pub(crate) fn check_q(q: f64) -> Result<()> {
    if (1.0..=2.0).contains(&q) {
        Ok(())
    } else {
        Err(ScatterError::Domain(format!("q must lie in [1, 2], got {q}")))
    }
}

pub(crate) fn check_depth(m: usize, width: usize) -> Result<()> {
    if m == 0 {
        return Err(ScatterError::Domain("scattering depth must be at least 1".into()));
    }
    let count = u32::try_from(m)
        .ok()
        .and_then(|e| width.checked_pow(e))
        .filter(|&c| c <= MAX_COEFFICIENTS);
    if count.is_none() {
        return Err(ScatterError::Config(format!(
            "{width}^{m} paths exceed the limit of {MAX_COEFFICIENTS}"
        )));
    }
    Ok(())
}

/// Values at depth `remaining` below a node whose (contracted) input has
/// transform `input`, in lexicographic path order.
fn subtree(input: &Spectrum, remaining: usize, bank: &FilterBank, q: f64, kappa: Contraction) -> Result<Vec<f64>> {
    let parts: Vec<Vec<f64>> = bank
        .filters()
        .par_iter()
        .map(|filter| {
            let conv = input.multiply(filter)?.to_signal();
            if remaining == 1 {
                Ok(vec![lq_norm_pow(&conv, q)?])
            } else {
                let next = apply_contraction(&conv, kappa).fourier();
                subtree(&next, remaining - 1, bank, q, kappa)
            }
        })
        .collect::<Result<_>>()?;
    Ok(parts.concat())
}

/// Full coefficient tensor of depth `m` over every path of `bank`'s
/// filters. Rotated banks produce the equivariant `(scale, angle)^m`
/// lattice.
pub fn scatter(f: &Signal, bank: &FilterBank, m: usize, q: f64, kappa: Contraction) -> Result<ScatteringCoefficients> {
    check_q(q)?;
    check_depth(m, bank.filter_count())?;
    ensure_same_grid(f.grid(), bank.grid())?;
    let values = subtree(&f.fourier(), m, bank, q, kappa)?;
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(ScatterError::Numeric(format!("coefficient {i} is not finite")));
    }
    let lattice = if bank.rotation_count() > 1 {
        Lattice::Equivariant
    } else {
        Lattice::Plain
    };
    let filters = bank.filter_count();
    let weights = (0..values.len())
        .map(|idx| {
            let mut rest = idx;
            let mut w = 1.0;
            for _ in 0..m {
                w *= bank.filter_weight(rest % filters);
                rest /= filters;
            }
            w
        })
        .collect();
    Ok(ScatteringCoefficients::from_parts(bank, lattice, m, q, values, weights))
}

fn path_filters(path: &ScatteringPath, bank: &FilterBank) -> Result<Vec<usize>> {
    let rotated = bank.rotation_count() > 1;
    if rotated && path.rotations.len() != path.scales.len() {
        return Err(ScatterError::Path(format!(
            "path has {} scales but {} rotations for a rotated bank",
            path.scales.len(),
            path.rotations.len()
        )));
    }
    if !rotated && !path.rotations.is_empty() && path.rotations.iter().any(|&r| r != 0) {
        return Err(ScatterError::Path(
            "rotation indices given for an unrotated bank".into(),
        ));
    }
    path.scales
        .iter()
        .enumerate()
        .map(|(l, &s)| {
            let r = path.rotations.get(l).copied().unwrap_or(0);
            bank.filter(s, r)?;
            Ok(bank.filter_index(s, r))
        })
        .collect()
}

/// Scattering propagator: convolve and contract for every element of the
/// path, including the last. The empty path returns `f`.
pub fn propagate(f: &Signal, path: &ScatteringPath, bank: &FilterBank, kappa: Contraction) -> Result<Signal> {
    ensure_same_grid(f.grid(), bank.grid())?;
    let indices = path_filters(path, bank)?;
    let mut u = f.clone();
    for i in indices {
        let conv = u.fourier().multiply(&bank.filters()[i])?.to_signal();
        u = apply_contraction(&conv, kappa);
    }
    Ok(u)
}

/// Single coefficient for `path`: propagate through all but the last
/// filter, convolve with the last, and take `||.||_q^q`.
pub fn path_coefficient(
    f: &Signal,
    path: &ScatteringPath,
    bank: &FilterBank,
    q: f64,
    kappa: Contraction,
) -> Result<f64> {
    check_q(q)?;
    let indices = path_filters(path, bank)?;
    let (&last, prefix) = indices
        .split_last()
        .ok_or_else(|| ScatterError::Path("coefficient paths are nonempty".into()))?;
    let mut u = f.clone();
    for &i in prefix {
        u = apply_contraction(&u.fourier().multiply(&bank.filters()[i])?.to_signal(), kappa);
    }
    lq_norm_pow(&u.fourier().multiply(&bank.filters()[last])?.to_signal(), q)
}

/// `(sum_p w_p |v_p|^r)^(1/r)` with `r = 2/q`.
pub fn scattering_norm(s: &ScatteringCoefficients) -> f64 {
    weighted_norm(s.values().iter().copied(), s.weights(), 2.0 / s.q())
}

pub(crate) fn weighted_norm(values: impl Iterator<Item = f64>, weights: &[f64], p: f64) -> f64 {
    let sum: f64 = if p == 1.0 {
        values.zip(weights).map(|(v, w)| w * v.abs()).sum()
    } else {
        values.zip(weights).map(|(v, w)| w * v.abs().powf(p)).sum()
    };
    sum.powf(1.0 / p)
}

/// Scattering norm of the pathwise difference of two compatible sets.
pub fn scattering_distance(a: &ScatteringCoefficients, b: &ScatteringCoefficients) -> Result<f64> {
    a.check_compatible(b)?;
    let diffs = a.values().iter().zip(b.values()).map(|(x, y)| x - y);
    Ok(weighted_norm(diffs, a.weights(), 2.0 / a.q()))
}
