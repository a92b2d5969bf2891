//! Dilations and diffeomorphisms acting on sampled signals, and the
//! commutator and stability measurements built on them.
//!
//! All resampling evaluates the trigonometric interpolant of the input,
//! which is exact for band-limited signals whose support stays inside the
//! periodic cell.

mod field;
pub mod interp;
mod stability;

pub use field::{diffeo_norms, DiffeoField, DiffeoNorms, DILATION_FLAT_FRACTION, DILATION_ZERO_FRACTION};
pub use interp::TrigInterpolant;
pub use stability::{stability_experiment, DeformationFamily, StabilityConfig, StabilityReport, StabilityRow};

use crate::error::{Result, ScatterError};
use crate::signal::{convolve, ensure_same_grid, lq_norm, lq_norm_pow, translate, Signal};
use crate::wavelet::{bank::sample_dilated, FilterBank, Normalization};

/// Largest `|c|` (or `||D tau||`) accepted in dimension `n`: `1 / (2n)`.
pub fn deformation_limit(n_dims: usize) -> f64 {
    1.0 / (2.0 * n_dims as f64)
}

/// `L_c f(x) = f((1 - c) x)`, for `|c| < 1/(2n)`.
pub fn dilate_signal(f: &Signal, c: f64) -> Result<Signal> {
    let limit = deformation_limit(f.grid().n_dims());
    if c.is_nan() || c.abs() >= limit {
        return Err(ScatterError::Domain(format!(
            "dilation parameter must satisfy |c| < {limit}, got {c}"
        )));
    }
    if c == 0.0 {
        return Ok(f.clone());
    }
    let s = 1.0 - c;
    let map = move |x: f64| s * x;
    let maps: Vec<&(dyn Fn(f64) -> f64 + Sync)> = vec![&map; f.grid().n_dims()];
    let out = interp::resample_separable(f, &maps);
    out.ensure_finite("dilation")?;
    Ok(out)
}

/// `L_tau f(x) = f(x - tau(x))`. Zero fields return `f`; constant fields
/// on whole samples are exact circular shifts. Fields with
/// `||D tau|| >= 1` are not diffeomorphisms and are only warned about.
pub fn warp_signal(f: &Signal, tau: &DiffeoField) -> Result<Signal> {
    ensure_same_grid(f.grid(), tau.grid())?;
    if tau.is_zero() {
        return Ok(f.clone());
    }
    let grid = *f.grid();
    if tau.norms().sup_dtau >= 1.0 {
        log::warn!(
            "displacement field has sup |D tau| = {} >= 1; the warp is not a diffeomorphism",
            tau.norms().sup_dtau
        );
    }
    if let Some(shift) = tau.constant_shift() {
        let steps: Vec<f64> = shift[..grid.n_dims()].iter().map(|s| s / grid.spacing()).collect();
        if steps.iter().all(|s| (s - s.round()).abs() < 1e-12) {
            let k: Vec<i64> = steps.iter().map(|s| s.round() as i64).collect();
            return translate(f, &k);
        }
    }
    let points: Vec<[f64; 2]> = (0..grid.len())
        .map(|i| {
            let x = grid.position(i);
            let t = tau.tau()[i];
            [x[0] - t[0], x[1] - t[1]]
        })
        .collect();
    let out = Signal::new(grid, TrigInterpolant::new(f).eval_many(&points))?;
    Ok(out)
}

fn check_resolvable(bank: &FilterBank, scales: &[f64]) -> Result<()> {
    let nyquist = bank.grid().nyquist();
    let bad: Vec<f64> = scales
        .iter()
        .copied()
        .filter(|&l| l.is_nan() || l <= 0.0 || bank.wavelet().peak_frequency() / l > nyquist * (1.0 + 1e-12))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(ScatterError::Config(format!(
            "scales {bad:?} are not resolvable on this grid"
        )))
    }
}

fn relative_l2(a: &Signal, b: &Signal) -> Result<f64> {
    let d = lq_norm(&a.sub(b)?, 2.0)?;
    let n = lq_norm(a, 2.0)?;
    Ok(if n > 0.0 { d / n } else { d })
}

/// Relative L2 gap between the two sides of the dilation commutation
/// identity
///
/// ```text
/// (L_c f) * psi_l (x) = (1-c)^(-n/2) (f * psi_{(1-c) l})((1-c) x)
/// ```
///
/// for the bank's wavelet (the prefactor is 1 for L1-normalized banks).
pub fn dilation_commutation_residual(f: &Signal, bank: &FilterBank, scale: f64, c: f64) -> Result<f64> {
    dilation_commutation_residual_at(f, bank, scale, c, (1.0 - c) * scale)
}

/// As [`dilation_commutation_residual`], but with the right-hand side
/// evaluated at `rhs_scale` instead of `(1 - c) scale`.
pub fn dilation_commutation_residual_at(
    f: &Signal,
    bank: &FilterBank,
    scale: f64,
    c: f64,
    rhs_scale: f64,
) -> Result<f64> {
    ensure_same_grid(f.grid(), bank.grid())?;
    check_resolvable(bank, &[scale, rhs_scale])?;
    let n = f.grid().n_dims();
    let psi = bank.wavelet();
    let norm = bank.normalization();
    let lhs = convolve(&dilate_signal(f, c)?, &sample_dilated(psi, f.grid(), scale, norm, 0.0))?;
    let inner = convolve(f, &sample_dilated(psi, f.grid(), rhs_scale, norm, 0.0))?;
    let prefactor = match norm {
        Normalization::L2 => (1.0 - c).powf(-(n as f64) / 2.0),
        Normalization::L1 => 1.0,
    };
    let rhs = dilate_signal(&inner, c)?.scale(prefactor.into());
    relative_l2(&lhs, &rhs)
}

/// `(sum_i w_i || (L_tau f) * psi_i - L_tau (f * psi_i) ||_2^2)^(1/2)` over
/// the bank, for `||D tau|| <= 1/(2n)`.
pub fn commutator_norm_estimate(f: &Signal, bank: &FilterBank, tau: &DiffeoField) -> Result<f64> {
    ensure_same_grid(f.grid(), bank.grid())?;
    ensure_same_grid(f.grid(), tau.grid())?;
    let limit = deformation_limit(f.grid().n_dims());
    if tau.norms().sup_dtau > limit {
        return Err(ScatterError::Domain(format!(
            "sup |D tau| = {} exceeds {limit}",
            tau.norms().sup_dtau
        )));
    }
    if tau.is_zero() {
        return Ok(0.0);
    }
    let warped = warp_signal(f, tau)?;
    let mut energy = 0.0;
    for (i, filter) in bank.filters().iter().enumerate() {
        let a = convolve(&warped, filter)?;
        let b = warp_signal(&convolve(f, filter)?, tau)?;
        energy += bank.filter_weight(i) * lq_norm_pow(&a.sub(&b)?, 2.0)?;
    }
    Ok(energy.sqrt())
}
