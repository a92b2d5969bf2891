//! Hilbert and Riesz transforms, the discrete Hardy norm, and the
//! Littlewood-Paley square functions.
//!
//! The singular multipliers `-i sign(w)` and `-i w_j / |w|` are set to zero at
//! the zero frequency. They are also zero at the Nyquist bin of the axis they
//! are odd in, where the sign of the frequency is ambiguous; this keeps the
//! transforms of real signals real.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, ScatterError};
use crate::signal::{convolve, lq_norm, Signal, Spectrum};
use crate::wavelet::{FilterBank, Normalization, ScaleKind};

fn apply_multiplier(f: &Signal, m: impl Fn(usize, [f64; 2]) -> Complex64) -> Signal {
    let spectrum = f.fourier();
    let grid = *f.grid();
    let values = spectrum
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| v * m(k, grid.frequency_vector(k)))
        .collect();
    Spectrum::new(grid, values).expect("length preserved").to_signal()
}

/// Hilbert transform of a 1D signal: multiplier `+i` for `w < 0` and `-i`
/// for `w > 0`, so that `H cos = sin`.
pub fn hilbert_transform(f: &Signal) -> Result<Signal> {
    let grid = *f.grid();
    if grid.n_dims() != 1 {
        return Err(ScatterError::Dimension(format!(
            "the Hilbert transform acts on 1D signals, got {} dimensions",
            grid.n_dims()
        )));
    }
    Ok(apply_multiplier(f, |k, w| {
        if k == 0 || grid.is_nyquist(0, k) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, -w[0].signum())
        }
    }))
}

/// Riesz transform along `axis` (0 or 1) of a 2D signal: multiplier
/// `-i w_axis / |w|`.
pub fn riesz_transform(f: &Signal, axis: usize) -> Result<Signal> {
    let grid = *f.grid();
    if grid.n_dims() != 2 {
        return Err(ScatterError::Dimension(format!(
            "Riesz transforms are implemented for 2D signals, got {} dimensions",
            grid.n_dims()
        )));
    }
    if axis >= 2 {
        return Err(ScatterError::Domain(format!("Riesz axis must be 0 or 1, got {axis}")));
    }
    Ok(apply_multiplier(f, |k, w| {
        let idx = grid.unravel(k);
        if k == 0 || grid.is_nyquist(axis, idx[axis]) {
            Complex64::new(0.0, 0.0)
        } else {
            let r = (w[0] * w[0] + w[1] * w[1]).sqrt();
            Complex64::new(0.0, -w[axis] / r)
        }
    }))
}

/// Parts of the discrete Hardy norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyNormReport {
    /// `||f||_1`.
    pub l1_part: f64,
    /// `||H f||_1` in 1D, or `||R_j f||_1` for each axis in 2D.
    pub transform_parts: Vec<f64>,
    pub total: f64,
}

/// `||f||_1 + ||H f||_1` in 1D, `||f||_1 + sum_j ||R_j f||_1` in 2D.
pub fn hardy_norm(f: &Signal) -> Result<HardyNormReport> {
    let l1_part = lq_norm(f, 1.0)?;
    let transform_parts = match f.grid().n_dims() {
        1 => vec![lq_norm(&hilbert_transform(f)?, 1.0)?],
        _ => vec![
            lq_norm(&riesz_transform(f, 0)?, 1.0)?,
            lq_norm(&riesz_transform(f, 1)?, 1.0)?,
        ],
    };
    let total = l1_part + transform_parts.iter().sum::<f64>();
    Ok(HardyNormReport {
        l1_part,
        transform_parts,
        total,
    })
}

fn square_function(f: &Signal, bank: &FilterBank) -> Result<Signal> {
    let spectrum = f.fourier();
    let layers: Vec<Vec<f64>> = bank
        .filters()
        .par_iter()
        .enumerate()
        .map(|(i, filter)| {
            let w = bank.filter_weight(i);
            spectrum
                .multiply(filter)
                .map(|s| s.to_signal().samples().iter().map(|z| w * z.norm_sqr()).collect())
        })
        .collect::<Result<_>>()?;
    let mut acc = vec![0.0; f.grid().len()];
    for layer in &layers {
        for (a, v) in acc.iter_mut().zip(layer) {
            *a += v;
        }
    }
    Signal::new(
        *f.grid(),
        acc.into_iter().map(|a| Complex64::new(a.sqrt(), 0.0)).collect(),
    )
}

/// Continuous Littlewood-Paley function
/// `G f(x) = (sum_k w_k |f * psi_k(x)|^2)^(1/2)` over an L2-normalized
/// continuous bank (rotations, if any, carry their Haar weights).
pub fn g_function(f: &Signal, bank: &FilterBank) -> Result<Signal> {
    if bank.kind() != ScaleKind::Continuous {
        return Err(ScatterError::Mode("the G-function needs a continuous bank".into()));
    }
    if bank.normalization() != Normalization::L2 {
        return Err(ScatterError::Config(
            "the G-function needs an L2-normalized bank".into(),
        ));
    }
    square_function(f, bank)
}

/// Dyadic Littlewood-Paley function `g f(x) = (sum_j |f * psi_j(x)|^2)^(1/2)`.
pub fn g_function_dyadic(f: &Signal, bank: &FilterBank) -> Result<Signal> {
    if bank.kind() != ScaleKind::Dyadic {
        return Err(ScatterError::Mode("the dyadic g-function needs a dyadic bank".into()));
    }
    square_function(f, bank)
}

/// `|f * psi_i|` for a single bank filter; the one-term square function.
pub fn filter_modulus(f: &Signal, bank: &FilterBank, index: usize) -> Result<Signal> {
    let filter = bank
        .filters()
        .get(index)
        .ok_or_else(|| ScatterError::Path(format!("filter {index} out of range")))?;
    Ok(convolve(f, filter)?.map(|z| Complex64::new(z.norm(), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::Grid;

    #[test]
    fn hilbert_maps_cos_to_sin() {
        let grid = Grid::new_1d(64, 0.1).unwrap();
        let w0 = 2.0 * std::f64::consts::PI * 5.0 / grid.period(0);
        let f = Signal::from_fn(grid, |x| Complex64::new((w0 * x[0]).cos(), 0.0));
        let g = Signal::from_fn(grid, |x| Complex64::new((w0 * x[0]).sin(), 0.0));
        assert!(hilbert_transform(&f).unwrap().max_abs_diff(&g).unwrap() <= 1e-10);
    }

    #[test]
    fn transforms_reject_wrong_shapes() {
        let one = Signal::zeros(Grid::new_1d(8, 1.0).unwrap());
        let two = Signal::zeros(Grid::new_2d(8, 8, 1.0).unwrap());
        assert!(matches!(hilbert_transform(&two), Err(ScatterError::Dimension(_))));
        assert!(matches!(riesz_transform(&one, 0), Err(ScatterError::Dimension(_))));
        assert!(matches!(riesz_transform(&two, 2), Err(ScatterError::Domain(_))));
    }

    #[test]
    fn constants_vanish() {
        let grid = Grid::new_2d(8, 8, 1.0).unwrap();
        let c = Signal::constant(grid, Complex64::new(2.5, 0.0));
        assert!(riesz_transform(&c, 1).unwrap().max_abs() < 1e-15);
        let h = hardy_norm(&Signal::zeros(grid)).unwrap();
        assert_eq!(h.total, 0.0);
    }
}
