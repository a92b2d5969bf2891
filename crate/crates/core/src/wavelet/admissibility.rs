//! Empirical checks of the hypotheses a wavelet must satisfy: the
//! Littlewood-Paley constancy of its scale-aggregated energy, vanishing
//! moments, and polynomial decay.

use rayon::prelude::*;
use serde::Serialize;

use super::{MotherWavelet, ScaleGrid, ScaleKind};
use crate::error::{Result, ScatterError};
use crate::signal::Grid;
use crate::wavelet::bank::sample_spectrum;

/// Spread of a scale-aggregated energy profile over frequency samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub samples: usize,
}

impl AdmissibilityReport {
    fn from_values(values: &[f64]) -> Self {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        AdmissibilityReport {
            min,
            max,
            mean,
            samples: values.len(),
        }
    }

    /// `(max - min) / mean`; infinite for a vanishing profile.
    pub fn flatness(&self) -> f64 {
        if self.mean > 0.0 {
            (self.max - self.min) / self.mean
        } else {
            f64::INFINITY
        }
    }

    /// Admissible to tolerance: a positive profile whose relative spread is
    /// at most `tolerance`.
    pub fn is_admissible(&self, tolerance: f64) -> bool {
        self.mean > 0.0 && self.flatness() <= tolerance
    }
}

fn check_samples(omegas: &[[f64; 2]]) -> Result<()> {
    if omegas.is_empty() {
        return Err(ScatterError::Domain("no frequency samples given".into()));
    }
    if omegas.iter().any(|w| w[0] == 0.0 && w[1] == 0.0) {
        return Err(ScatterError::Domain("frequency samples must avoid the origin".into()));
    }
    Ok(())
}

fn profile(omegas: &[[f64; 2]], f: impl Fn([f64; 2]) -> f64 + Sync) -> AdmissibilityReport {
    let values: Vec<f64> = omegas.par_iter().map(|&w| f(w)).collect();
    AdmissibilityReport::from_values(&values)
}

/// `sum_k dlog(lambda) |psi^(lambda_k w)|^2`, the log-midpoint quadrature of
/// `int |psi^(lambda w)|^2 d lambda / lambda`, at each sample `w`.
pub fn check_admissibility_continuous(
    psi: &MotherWavelet,
    omegas: &[[f64; 2]],
    scales: &ScaleGrid,
) -> Result<AdmissibilityReport> {
    check_samples(omegas)?;
    if scales.kind() != ScaleKind::Continuous {
        return Err(ScatterError::Mode(
            "continuous admissibility needs a continuous scale grid".into(),
        ));
    }
    let d = scales.log_step();
    Ok(profile(omegas, |w| {
        scales
            .scales()
            .iter()
            .map(|&l| psi.fourier([l * w[0], l * w[1]]).norm_sqr())
            .sum::<f64>()
            * d
    }))
}

/// `sum_j |psi^(2^j w)|^2` at each sample `w`.
pub fn check_admissibility_dyadic(
    psi: &MotherWavelet,
    omegas: &[[f64; 2]],
    scales: &ScaleGrid,
) -> Result<AdmissibilityReport> {
    check_samples(omegas)?;
    if scales.kind() != ScaleKind::Dyadic {
        return Err(ScatterError::Mode(
            "dyadic admissibility needs a dyadic scale grid".into(),
        ));
    }
    Ok(profile(omegas, |w| {
        scales
            .scales()
            .iter()
            .map(|&l| psi.fourier([l * w[0], l * w[1]]).norm_sqr())
            .sum()
    }))
}

/// `count` log-spaced radii in `[lo, hi]`, each along `directions` equally
/// spaced directions of the upper half plane (a single positive direction in
/// 1D).
pub fn log_spaced_frequencies(lo: f64, hi: f64, count: usize, n_dims: usize, directions: usize) -> Vec<[f64; 2]> {
    let count = count.max(2);
    let dirs = if n_dims == 1 { 1 } else { directions.max(1) };
    let mut out = Vec::with_capacity(count * dirs);
    for i in 0..count {
        let r = lo * (hi / lo).powf(i as f64 / (count - 1) as f64);
        for d in 0..dirs {
            let t = std::f64::consts::PI * d as f64 / dirs as f64;
            out.push([r * t.cos(), r * t.sin()]);
        }
    }
    out
}

/// Samples of `psi` on `grid`: from the closed form when available,
/// otherwise from the sampled transform.
pub fn spatial_samples(psi: &MotherWavelet, grid: &Grid) -> Vec<num_complex::Complex64> {
    if psi.has_spatial() {
        (0..grid.len())
            .map(|i| psi.spatial(grid.position(i)).unwrap())
            .collect()
    } else {
        sample_spectrum(grid, |w| psi.fourier(w)).to_signal().into_samples()
    }
}

/// One monomial moment `int x^alpha psi(x) dx`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub exponents: [u32; 2],
    /// Modulus of the moment.
    pub value: f64,
    /// `int |x^alpha| |psi(x)| dx`, the natural scale of the moment.
    pub magnitude: f64,
}

impl MomentReport {
    pub fn relative(&self) -> f64 {
        if self.magnitude > 0.0 {
            self.value / self.magnitude
        } else {
            0.0
        }
    }
}

/// Monomial moments of total degree below `min(declared, 6)` (all degrees
/// below 6 when every moment is declared to vanish).
pub fn vanishing_moments(psi: &MotherWavelet, grid: &Grid) -> Result<Vec<MomentReport>> {
    if psi.n_dims() != grid.n_dims() {
        return Err(ScatterError::Dimension("wavelet and grid dimensions differ".into()));
    }
    let degree = psi.vanishing_moments().unwrap_or(6).min(6);
    let samples = spatial_samples(psi, grid);
    let dv = grid.cell_volume();
    let mut out = Vec::new();
    for total in 0..degree {
        let splits: Vec<[u32; 2]> = if grid.n_dims() == 1 {
            vec![[total, 0]]
        } else {
            (0..=total).map(|a| [a, total - a]).collect()
        };
        for e in splits {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for (i, z) in samples.iter().enumerate() {
                let x = grid.position(i);
                let m = x[0].powi(e[0] as i32) * x[1].powi(e[1] as i32);
                acc += z * m;
                mag += z.norm() * m.abs();
            }
            out.push(MomentReport {
                exponents: e,
                value: acc.norm() * dv,
                magnitude: mag * dv,
            });
        }
    }
    Ok(out)
}

/// Least-squares fit of `|psi(x)| ~ A (1 + |x|)^-(n + eps)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    pub amplitude: f64,
    pub epsilon: f64,
    pub points: usize,
}

/// Fit the decay constants over the outer half of the grid radius, using
/// the samples whose modulus is still representable.
pub fn fit_decay(psi: &MotherWavelet, grid: &Grid) -> Result<DecayFit> {
    if psi.n_dims() != grid.n_dims() {
        return Err(ScatterError::Dimension("wavelet and grid dimensions differ".into()));
    }
    let samples = spatial_samples(psi, grid);
    let r_max = (0..grid.n_dims())
        .map(|a| grid.period(a) / 2.0)
        .fold(f64::INFINITY, f64::min);
    let (mut sx, mut sy, mut sxx, mut sxy, mut k) = (0.0, 0.0, 0.0, 0.0, 0usize);
    for (i, z) in samples.iter().enumerate() {
        let x = grid.position(i);
        let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
        let m = z.norm();
        if r < r_max / 2.0 || r > r_max || m < 1e-290 {
            continue;
        }
        let (lx, ly) = ((1.0 + r).ln(), m.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        k += 1;
    }
    let kf = k as f64;
    let denom = kf * sxx - sx * sx;
    if k < 2 || denom.abs() < 1e-300 {
        return Err(ScatterError::Numeric(format!(
            "only {k} tail samples above underflow; decay fit is undetermined"
        )));
    }
    let slope = (kf * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / kf;
    Ok(DecayFit {
        amplitude: intercept.exp(),
        epsilon: -slope - grid.n_dims() as f64,
        points: k,
    })
}
