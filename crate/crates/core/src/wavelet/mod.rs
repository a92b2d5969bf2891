//! Mother wavelets, scale grids, filter banks and admissibility checks.
//!
//! A bank samples `psi^(lambda R^-1 w)` (times the normalization factor)
//! directly at the grid frequencies, so dilation and rotation never
//! resample a spatial filter. [`build_bank`] rejects a configuration when
//!
//! * a scale puts the wavelet's peak frequency above Nyquist,
//! * a scale is so coarse that no nonzero grid frequency sees more than
//!   [`bank::RESOLVED_FRACTION`] of the continuous peak, or
//! * a sampled filter's DC response exceeds [`bank::ZERO_MEAN_TOLERANCE`]
//!   times its peak.

pub mod admissibility;
pub mod bank;
mod mother;
mod scales;

pub use admissibility::{check_admissibility_continuous, check_admissibility_dyadic, AdmissibilityReport};
pub use bank::{build_bank, BankDescriptor, FilterBank, Normalization};
pub use mother::{angular_profile, meyer_profile, smooth_step, MotherWavelet, WaveletFamily};
pub use scales::{ScaleGrid, ScaleKind, ScaleMode};

use crate::error::Result;

/// The difference wavelet `(1-c)^-n psi(x/(1-c)) - psi(x)`; a domain
/// error unless `|c| < 1/(2n)`.
pub fn difference_wavelet(psi: &MotherWavelet, c: f64) -> Result<MotherWavelet> {
    MotherWavelet::difference(psi, c)
}
