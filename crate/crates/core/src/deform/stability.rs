use rayon::prelude::*;
use serde::Serialize;

use super::{deformation_limit, dilate_signal, warp_signal, DiffeoField};
use crate::error::{Result, ScatterError};
use crate::harmonic::hardy_norm;
use crate::scattering::{scatter, scattering_distance};
use crate::signal::{lq_norm_pow, Contraction, Signal};
use crate::wavelet::FilterBank;

/// A one-parameter family of deformations.
#[derive(Debug, Clone, PartialEq)]
pub enum DeformationFamily {
    /// `tau(x) = c x`, one member per `c`.
    Dilation { params: Vec<f64> },
    /// `s * amplitude * sin(2 pi cycles x_a / L_a)` on each axis, one member
    /// per `s`.
    SinusoidalWarp {
        params: Vec<f64>,
        amplitude: f64,
        cycles: u32,
    },
}

impl DeformationFamily {
    pub fn params(&self) -> &[f64] {
        match self {
            DeformationFamily::Dilation { params } | DeformationFamily::SinusoidalWarp { params, .. } => params,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DeformationFamily::Dilation { .. } => "dilation",
            DeformationFamily::SinusoidalWarp { .. } => "sinusoidal-warp",
        }
    }
}

/// Transform settings for a stability sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityConfig {
    pub m: usize,
    pub q: f64,
    pub kappa: Contraction,
    /// Largest accepted `max(ratio) / min(ratio)`.
    pub band_factor: f64,
}

impl StabilityConfig {
    pub fn new(m: usize, q: f64) -> Self {
        StabilityConfig {
            m,
            q,
            kappa: Contraction::Modulus,
            band_factor: 3.0,
        }
    }
}

/// One family member.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityRow {
    pub param: f64,
    pub sup_dtau: f64,
    pub sup_d2tau: f64,
    pub distance: f64,
    /// `||f||_q^q`, or the Hardy norm of `f` when `q = 1`.
    pub input_term: f64,
    /// `distance / (deformation size * input_term)`; `None` when the
    /// deformation is trivial.
    pub ratio: Option<f64>,
    /// The deformation size used in the ratio: `|c|` for dilations, the
    /// derivative bound expression for warps.
    pub bound: f64,
}

/// Rows of a sweep, sorted by parameter, with run metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub family: String,
    pub wavelet: String,
    pub mode: String,
    pub q: f64,
    pub m: usize,
    pub band_factor: f64,
    pub rows: Vec<StabilityRow>,
}

impl StabilityReport {
    /// `max(ratio) / min(ratio)` over rows with a defined ratio.
    pub fn ratio_band(&self) -> Option<f64> {
        let ratios: Vec<f64> = self.rows.iter().filter_map(|r| r.ratio).collect();
        if ratios.is_empty() {
            return None;
        }
        let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        Some(hi / lo)
    }

    /// Every ratio is finite and the band is within the configured factor.
    pub fn passes(&self) -> bool {
        self.rows.iter().all(|r| r.ratio.is_none_or(f64::is_finite))
            && self.ratio_band().is_none_or(|b| b <= self.band_factor)
    }

    /// CSV with header `param,sup_Dtau,sup_D2tau,distance,input_term,ratio`;
    /// undefined ratios are written as `undefined`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| ScatterError::Io(e.to_string());
        w.write_record(["param", "sup_Dtau", "sup_D2tau", "distance", "input_term", "ratio"])
            .map_err(io)?;
        for r in &self.rows {
            w.write_record([
                r.param.to_string(),
                r.sup_dtau.to_string(),
                r.sup_d2tau.to_string(),
                r.distance.to_string(),
                r.input_term.to_string(),
                r.ratio.map_or_else(|| "undefined".to_string(), |v| v.to_string()),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| ScatterError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ScatterError::Format(e.to_string()))
    }
}

/// Derivative bound for warps:
/// `|Dt| + (|Dt| max(log(osc / |Dt|), 1) + |D^2 t|)^2`.
pub fn warp_bound(sup_dtau: f64, osc_tau: f64, sup_d2tau: f64) -> f64 {
    if sup_dtau == 0.0 {
        return sup_d2tau * sup_d2tau;
    }
    let log_term = (osc_tau / sup_dtau).ln().max(1.0);
    sup_dtau + (sup_dtau * log_term + sup_d2tau).powi(2)
}

/// Scatter `f` and each deformed copy and tabulate the normalized
/// distances.
pub fn stability_experiment(
    f: &Signal,
    bank: &FilterBank,
    config: &StabilityConfig,
    family: &DeformationFamily,
) -> Result<StabilityReport> {
    if family.params().is_empty() {
        return Err(ScatterError::Config("the deformation family is empty".into()));
    }
    let n = f.grid().n_dims();
    let limit = deformation_limit(n);
    let input_term = if config.q == 1.0 {
        hardy_norm(f)?.total
    } else {
        lq_norm_pow(f, config.q)?
    };
    let reference = scatter(f, bank, config.m, config.q, config.kappa)?;

    let mut params = family.params().to_vec();
    params.sort_by(f64::total_cmp);
    let rows = params
        .par_iter()
        .map(|&param| -> Result<StabilityRow> {
            let (deformed, sup_dtau, sup_d2tau, bound) = match family {
                DeformationFamily::Dilation { .. } => {
                    if param.is_nan() || param.abs() >= limit {
                        return Err(ScatterError::Domain(format!(
                            "dilation parameter {param} is outside |c| < {limit}"
                        )));
                    }
                    (dilate_signal(f, param)?, param.abs(), 0.0, param.abs())
                }
                DeformationFamily::SinusoidalWarp { amplitude, cycles, .. } => {
                    let tau = DiffeoField::sinusoidal(*f.grid(), param * amplitude, *cycles)?;
                    let nm = tau.norms();
                    if nm.sup_dtau > limit {
                        return Err(ScatterError::Domain(format!(
                            "warp with sup |D tau| = {} is outside the regime {limit}",
                            nm.sup_dtau
                        )));
                    }
                    let b = warp_bound(nm.sup_dtau, nm.osc_tau, nm.sup_d2tau);
                    (warp_signal(f, &tau)?, nm.sup_dtau, nm.sup_d2tau, b)
                }
            };
            let coeffs = scatter(&deformed, bank, config.m, config.q, config.kappa)?;
            let distance = scattering_distance(&reference, &coeffs)?;
            let denom = bound * input_term;
            let ratio = (denom > 0.0).then(|| distance / denom);
            Ok(StabilityRow {
                param,
                sup_dtau,
                sup_d2tau,
                distance,
                input_term,
                ratio,
                bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(StabilityReport {
        family: family.name().to_string(),
        wavelet: bank.wavelet().name(),
        mode: format!("{:?}", bank.kind()).to_lowercase(),
        q: config.q,
        m: config.m,
        band_factor: config.band_factor,
        rows,
    })
}
