use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{MotherWavelet, ScaleGrid, ScaleKind, ScaleMode};
use crate::error::{Result, ScatterError};
use crate::rotation::grid::{cos_sin, rotate_inverse};
use crate::rotation::RotationGrid;
use crate::signal::{Grid, Spectrum};

/// How a dilated wavelet is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `psi_l(x) = l^(-n/2) psi(x / l)`, preserving `||psi||_2`.
    L2,
    /// `psi_l(x) = l^-n psi(x / l)`, preserving `||psi||_1`.
    L1,
}

impl Normalization {
    /// Factor multiplying `psi^(l w)` in the transform of the dilate.
    pub fn fourier_factor(self, scale: f64, n_dims: usize) -> f64 {
        match self {
            Normalization::L2 => scale.powf(n_dims as f64 / 2.0),
            Normalization::L1 => 1.0,
        }
    }
}

/// Relative size of the DC response above which a filter is rejected.
pub const ZERO_MEAN_TOLERANCE: f64 = 1e-8;

/// Fraction of the continuous peak the grid must capture for a filter to
/// count as resolved.
pub const RESOLVED_FRACTION: f64 = 1e-3;

/// Sample a transfer function on the grid frequencies.
///
/// At the Nyquist bin of an even axis the sign of the frequency is
/// ambiguous; the sample there is the average over both signs. This keeps
/// quarter-turn rotations of a filter an exact permutation of its samples
/// and keeps filters of real wavelets Hermitian.
pub fn sample_spectrum(grid: &Grid, f: impl Fn([f64; 2]) -> Complex64) -> Spectrum {
    Spectrum::from_fn_indexed(grid, |flat, w| {
        let idx = grid.unravel(flat);
        let flips: Vec<usize> = (0..grid.n_dims()).filter(|&a| grid.is_nyquist(a, idx[a])).collect();
        if flips.is_empty() {
            return f(w);
        }
        let combos = 1usize << flips.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for mask in 0..combos {
            let mut v = w;
            for (bit, &axis) in flips.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    v[axis] = -v[axis];
                }
            }
            acc += f(v);
        }
        acc / combos as f64
    })
}

/// Transform of the wavelet dilated by `scale` and rotated by `angle`.
pub fn dilated_transform(
    psi: &MotherWavelet,
    scale: f64,
    normalization: Normalization,
    angle: f64,
    w: [f64; 2],
) -> Complex64 {
    let factor = normalization.fourier_factor(scale, psi.n_dims());
    let v = if angle == 0.0 {
        w
    } else {
        rotate_inverse(w, cos_sin(angle))
    };
    psi.fourier([scale * v[0], scale * v[1]]) * factor
}

/// Sample one dilated, rotated wavelet on `grid`.
pub fn sample_dilated(
    psi: &MotherWavelet,
    grid: &Grid,
    scale: f64,
    normalization: Normalization,
    angle: f64,
) -> Spectrum {
    let factor = normalization.fourier_factor(scale, psi.n_dims());
    let cs = cos_sin(angle);
    let rotated = angle != 0.0;
    sample_spectrum(grid, |w| {
        let v = if rotated { rotate_inverse(w, cs) } else { w };
        psi.fourier([scale * v[0], scale * v[1]]) * factor
    })
}

/// Everything that identifies a bank for compatibility checks and output
/// metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BankDescriptor {
    pub wavelet: String,
    pub extents: Vec<usize>,
    pub spacing: f64,
    pub scale_mode: ScaleMode,
    pub normalization: Normalization,
    pub scales: Vec<f64>,
    pub angles: Vec<f64>,
    pub haar_mass: f64,
}

/// An immutable bank of sampled wavelet transforms, one per
/// `(scale, rotation)` pair. Filter `s * R + r` holds scale `s` and
/// rotation `r`.
#[derive(Debug, Clone)]
pub struct FilterBank {
    wavelet: MotherWavelet,
    grid: Grid,
    scale_grid: ScaleGrid,
    normalization: Normalization,
    rotations: Option<RotationGrid>,
    filters: Vec<Spectrum>,
    scale_weights: Vec<f64>,
}

/// Continuous peak response of a dilate, used as the reference magnitude.
fn reference_peak(psi: &MotherWavelet, scale: f64, normalization: Normalization) -> f64 {
    let wp = psi.peak_frequency() / scale;
    dilated_transform(psi, scale, normalization, 0.0, [wp, 0.0]).norm()
}

/// Build a bank; see the module documentation for the resolvability and
/// zero-mean checks performed.
pub fn build_bank(
    psi: &MotherWavelet,
    grid: Grid,
    scale_grid: ScaleGrid,
    normalization: Normalization,
    rotations: Option<RotationGrid>,
) -> Result<FilterBank> {
    if psi.n_dims() != grid.n_dims() {
        return Err(ScatterError::Dimension(format!(
            "{}-dimensional wavelet on a {}-dimensional grid",
            psi.n_dims(),
            grid.n_dims()
        )));
    }
    if rotations.is_some() && grid.n_dims() != 2 {
        return Err(ScatterError::Dimension("rotated banks require a 2D grid".into()));
    }

    let nyquist = grid.nyquist();
    let fundamental = grid.fundamental();
    let mut too_fine = Vec::new();
    for &scale in scale_grid.scales() {
        let wp = psi.peak_frequency() / scale;
        if wp > nyquist * (1.0 + 1e-12) {
            too_fine.push(scale);
        } else if wp < 2.0 * fundamental {
            log::warn!(
                "scale {scale}: peak frequency {wp} is within two fundamentals of zero; \
                 the filter extends over most of the periodic cell"
            );
        }
    }
    if !too_fine.is_empty() {
        return Err(ScatterError::Config(format!(
            "scales {too_fine:?} put the wavelet peak above the Nyquist frequency {nyquist}"
        )));
    }

    let angles = rotations.map(|r| r.angles()).unwrap_or_else(|| vec![0.0]);
    let mut filters = Vec::with_capacity(scale_grid.len() * angles.len());
    let mut too_coarse = Vec::new();
    let mut not_zero_mean = Vec::new();
    for &scale in scale_grid.scales() {
        let reference = reference_peak(psi, scale, normalization);
        for &angle in &angles {
            let filter = sample_dilated(psi, &grid, scale, normalization, angle);
            let off_dc = filter.values()[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);
            if off_dc < RESOLVED_FRACTION * reference {
                too_coarse.push(scale);
            }
            if filter.dc().norm() > ZERO_MEAN_TOLERANCE * filter.peak() {
                not_zero_mean.push(scale);
            }
            filters.push(filter);
        }
    }
    too_coarse.dedup();
    not_zero_mean.dedup();
    if !too_coarse.is_empty() {
        return Err(ScatterError::Config(format!(
            "scales {too_coarse:?} are wider than the grid can resolve"
        )));
    }
    if !not_zero_mean.is_empty() {
        return Err(ScatterError::Config(format!(
            "wavelet '{}' is not zero-mean at scales {not_zero_mean:?}",
            psi.name()
        )));
    }

    let scale_weights = scale_grid.weights(grid.n_dims());
    Ok(FilterBank {
        wavelet: psi.clone(),
        grid,
        scale_grid,
        normalization,
        rotations,
        filters,
        scale_weights,
    })
}

impl FilterBank {
    pub fn wavelet(&self) -> &MotherWavelet {
        &self.wavelet
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn scale_grid(&self) -> &ScaleGrid {
        &self.scale_grid
    }

    pub fn kind(&self) -> ScaleKind {
        self.scale_grid.kind()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn rotations(&self) -> Option<&RotationGrid> {
        self.rotations.as_ref()
    }

    pub fn scale_count(&self) -> usize {
        self.scale_grid.len()
    }

    /// Number of rotations; 1 for unrotated banks.
    pub fn rotation_count(&self) -> usize {
        self.rotations.map_or(1, |r| r.count())
    }

    pub fn filter_count(&self) -> usize {
        self.filters.len()
    }

    pub fn filters(&self) -> &[Spectrum] {
        &self.filters
    }

    #[inline]
    pub fn filter_index(&self, scale: usize, rotation: usize) -> usize {
        scale * self.rotation_count() + rotation
    }

    pub fn filter(&self, scale: usize, rotation: usize) -> Result<&Spectrum> {
        if scale >= self.scale_count() || rotation >= self.rotation_count() {
            return Err(ScatterError::Path(format!(
                "filter ({scale}, {rotation}) outside a {}x{} bank",
                self.scale_count(),
                self.rotation_count()
            )));
        }
        Ok(&self.filters[self.filter_index(scale, rotation)])
    }

    /// Scale quadrature weights.
    pub fn scale_weights(&self) -> &[f64] {
        &self.scale_weights
    }

    /// Haar weight of one rotation (1 for unrotated banks).
    pub fn haar_weight(&self) -> f64 {
        self.rotations.map_or(1.0, |r| r.weight())
    }

    /// Combined per-layer weight of filter `index`.
    #[inline]
    pub fn filter_weight(&self, index: usize) -> f64 {
        self.scale_weights[index / self.rotation_count()] * self.haar_weight()
    }

    pub fn angles(&self) -> Vec<f64> {
        self.rotations.map(|r| r.angles()).unwrap_or_default()
    }

    /// Sample this bank's wavelet at an arbitrary scale and angle.
    pub fn sample(&self, scale: f64, angle: f64) -> Spectrum {
        sample_dilated(&self.wavelet, &self.grid, scale, self.normalization, angle)
    }

    pub fn descriptor(&self) -> BankDescriptor {
        BankDescriptor {
            wavelet: self.wavelet.name(),
            extents: self.grid.extents().to_vec(),
            spacing: self.grid.spacing(),
            scale_mode: self.scale_grid.mode(),
            normalization: self.normalization,
            scales: self.scale_grid.scales().to_vec(),
            angles: self.angles(),
            haar_mass: self.rotations.map_or(1.0, |r| r.total_mass()),
        }
    }
}
