use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScatterError};

/// How the scale axis is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ScaleMode {
    /// Scales `2^j` for `j_min <= j <= j_max`, counting measure.
    Dyadic { j_min: i32, j_max: i32 },
    /// Geometric scales `lambda_min * 2^(k / voices)` up to `lambda_max`,
    /// weighted for the measure `d lambda / lambda^(n+1)`.
    Continuous {
        lambda_min: f64,
        lambda_max: f64,
        voices: u32,
    },
}

/// Coarse classification used when comparing transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleKind {
    Dyadic,
    Continuous,
}

/// A finite sampling of the scale axis with its quadrature weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    mode: ScaleMode,
    scales: Vec<f64>,
}

impl ScaleGrid {
    pub fn dyadic(j_min: i32, j_max: i32) -> Result<Self> {
        if j_max < j_min {
            return Err(ScatterError::Config(format!(
                "dyadic range is empty: j_min = {j_min} > j_max = {j_max}"
            )));
        }
        if j_min < -60 || j_max > 60 {
            return Err(ScatterError::Config("dyadic exponents must lie in [-60, 60]".into()));
        }
        let scales = (j_min..=j_max).map(|j| 2f64.powi(j)).collect();
        Ok(ScaleGrid {
            mode: ScaleMode::Dyadic { j_min, j_max },
            scales,
        })
    }

    /// Geometric grid with `voices` samples per octave. The last scale is
    /// the largest grid point not exceeding `lambda_max` (up to rounding).
    pub fn continuous(lambda_min: f64, lambda_max: f64, voices: u32) -> Result<Self> {
        if !(lambda_min.is_finite() && lambda_min > 0.0 && lambda_max.is_finite()) {
            return Err(ScatterError::Config(format!(
                "scale range must be positive and finite, got [{lambda_min}, {lambda_max}]"
            )));
        }
        if lambda_max < lambda_min {
            return Err(ScatterError::Config(format!(
                "scale range is empty: {lambda_min} > {lambda_max}"
            )));
        }
        if voices == 0 {
            return Err(ScatterError::Config("voices per octave must be positive".into()));
        }
        let count = ((lambda_max / lambda_min).log2() * voices as f64 + 1e-9).floor() as usize + 1;
        if count > 100_000 {
            return Err(ScatterError::Config(format!("{count} scales is too many")));
        }
        let scales = (0..count)
            .map(|k| lambda_min * 2f64.powf(k as f64 / voices as f64))
            .collect();
        Ok(ScaleGrid {
            mode: ScaleMode::Continuous {
                lambda_min,
                lambda_max,
                voices,
            },
            scales,
        })
    }

    pub fn from_mode(mode: ScaleMode) -> Result<Self> {
        match mode {
            ScaleMode::Dyadic { j_min, j_max } => Self::dyadic(j_min, j_max),
            ScaleMode::Continuous {
                lambda_min,
                lambda_max,
                voices,
            } => Self::continuous(lambda_min, lambda_max, voices),
        }
    }

    pub fn mode(&self) -> ScaleMode {
        self.mode
    }

    pub fn kind(&self) -> ScaleKind {
        match self.mode {
            ScaleMode::Dyadic { .. } => ScaleKind::Dyadic,
            ScaleMode::Continuous { .. } => ScaleKind::Continuous,
        }
    }

    /// Scales in strictly increasing order.
    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }

    /// Quadrature weights in dimension `n_dims`: unit weights for dyadic
    /// grids, `(ln 2 / voices) lambda_k^-n` for continuous grids.
    pub fn weights(&self, n_dims: usize) -> Vec<f64> {
        match self.mode {
            ScaleMode::Dyadic { .. } => vec![1.0; self.scales.len()],
            ScaleMode::Continuous { voices, .. } => {
                let d = LN_2 / voices as f64;
                self.scales.iter().map(|l| d * l.powi(-(n_dims as i32))).collect()
            }
        }
    }

    /// Step in `log lambda` between neighbouring scales.
    pub fn log_step(&self) -> f64 {
        match self.mode {
            ScaleMode::Dyadic { .. } => LN_2,
            ScaleMode::Continuous { voices, .. } => LN_2 / voices as f64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_grid() {
        let g = ScaleGrid::dyadic(-2, 2).unwrap();
        assert_eq!(g.scales(), &[0.25, 0.5, 1.0, 2.0, 4.0]);
        assert_eq!(g.weights(2), vec![1.0; 5]);
        assert!(ScaleGrid::dyadic(1, 0).is_err());
    }

    #[test]
    fn continuous_grid_is_geometric() {
        let g = ScaleGrid::continuous(1.0, 8.0, 4).unwrap();
        assert_eq!(g.len(), 13);
        assert!((g.scales()[12] - 8.0).abs() < 1e-12);
        assert!(g.scales().windows(2).all(|w| w[1] > w[0]));
        let w = g.weights(1);
        assert!((w[4] - LN_2 / 4.0 / 2.0).abs() < 1e-15);
        assert!(w.iter().all(|&x| x > 0.0));
        assert!(ScaleGrid::continuous(2.0, 1.0, 4).is_err());
        assert!(ScaleGrid::continuous(1.0, 2.0, 0).is_err());
    }
}
