use serde::Serialize;

use crate::error::{Result, ScatterError};
use crate::signal::Grid;
use crate::wavelet::smooth_step;

/// Sup-norms of a displacement field and its derivatives, measured on the
/// sampled field with periodic finite differences.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DiffeoNorms {
    /// `sup_x |tau(x)|`.
    pub sup_tau: f64,
    /// `sup_x` of the max absolute row sum of the Jacobian.
    pub sup_dtau: f64,
    /// `sup_x` of the largest second partial derivative in absolute value.
    pub sup_d2tau: f64,
    /// `sup_{x,y} |tau(x) - tau(y)|`, from componentwise ranges.
    pub osc_tau: f64,
}

/// A sampled displacement field `tau` on a periodic grid, in physical
/// units. The warp it induces is `f(x) -> f(x - tau(x))`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffeoField {
    grid: Grid,
    tau: Vec<[f64; 2]>,
    norms: DiffeoNorms,
    constant: bool,
}

/// Fraction of the half-period inside which the dilation field is exactly
/// linear.
pub const DILATION_FLAT_FRACTION: f64 = 0.6;
/// Fraction of the half-period beyond which the dilation field vanishes.
pub const DILATION_ZERO_FRACTION: f64 = 0.9;

fn taper(t: f64) -> f64 {
    1.0 - smooth_step((t - DILATION_FLAT_FRACTION) / (DILATION_ZERO_FRACTION - DILATION_FLAT_FRACTION))
}

impl DiffeoField {
    pub fn new(grid: Grid, tau: Vec<[f64; 2]>) -> Result<Self> {
        if tau.len() != grid.len() {
            return Err(ScatterError::Dimension(format!(
                "expected {} displacement vectors, got {}",
                grid.len(),
                tau.len()
            )));
        }
        let n = grid.n_dims();
        if tau.iter().any(|t| !t[..n].iter().all(|v| v.is_finite())) {
            return Err(ScatterError::Numeric("displacement field is not finite".into()));
        }
        let mut tau = tau;
        if n == 1 {
            for t in tau.iter_mut() {
                t[1] = 0.0;
            }
        }
        let constant = tau.iter().all(|t| *t == tau[0]);
        let norms = diffeo_norms_of(&grid, &tau, None);
        Ok(DiffeoField {
            grid,
            tau,
            norms,
            constant,
        })
    }

    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> [f64; 2]) -> Result<Self> {
        Self::new(grid, (0..grid.len()).map(|i| f(grid.position(i))).collect())
    }

    pub fn zero(grid: Grid) -> Self {
        Self::new(grid, vec![[0.0; 2]; grid.len()]).expect("zero field is valid")
    }

    pub fn constant(grid: Grid, shift: [f64; 2]) -> Result<Self> {
        Self::new(grid, vec![shift; grid.len()])
    }

    /// `tau_a(x) = amplitude * sin(2 pi cycles x_a / L_a)` on every axis.
    pub fn sinusoidal(grid: Grid, amplitude: f64, cycles: u32) -> Result<Self> {
        Self::from_fn(grid, |x| {
            let mut t = [0.0; 2];
            for (a, ta) in t.iter_mut().enumerate().take(grid.n_dims()) {
                *ta = amplitude * (2.0 * std::f64::consts::PI * cycles as f64 * x[a] / grid.period(a)).sin();
            }
            t
        })
    }

    /// `tau(x) = c x` on the central part of the cell, rolled off smoothly
    /// to zero before the cell boundary so that the field is periodic.
    pub fn dilation(grid: Grid, c: f64) -> Result<Self> {
        Self::from_fn(grid, |x| {
            let w: f64 = (0..grid.n_dims())
                .map(|a| taper(x[a].abs() / (grid.period(a) / 2.0)))
                .product();
            let mut t = [0.0; 2];
            for (a, ta) in t.iter_mut().enumerate().take(grid.n_dims()) {
                *ta = c * x[a] * w;
            }
            t
        })
    }

    /// Half-width of the region where [`DiffeoField::dilation`] is exactly
    /// linear, including the finite-difference stencil.
    pub fn dilation_interior(grid: &Grid) -> f64 {
        (0..grid.n_dims())
            .map(|a| DILATION_FLAT_FRACTION * grid.period(a) / 2.0 - 2.0 * grid.spacing())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn tau(&self) -> &[[f64; 2]] {
        &self.tau
    }

    pub fn norms(&self) -> DiffeoNorms {
        self.norms
    }

    pub fn is_zero(&self) -> bool {
        self.constant && self.tau[0] == [0.0, 0.0]
    }

    /// The common displacement if the field is constant.
    pub fn constant_shift(&self) -> Option<[f64; 2]> {
        self.constant.then_some(self.tau[0])
    }

    /// `sup |D tau|` restricted to points with `max_a |x_a| <= radius`.
    pub fn sup_dtau_within(&self, radius: f64) -> f64 {
        diffeo_norms_of(&self.grid, &self.tau, Some(radius)).sup_dtau
    }

    /// Multiply the field by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.grid, self.tau.iter().map(|t| [s * t[0], s * t[1]]).collect())
    }
}

/// Recompute the derived norms of a field.
pub fn diffeo_norms(tau: &DiffeoField) -> DiffeoNorms {
    diffeo_norms_of(&tau.grid, &tau.tau, None)
}

fn diffeo_norms_of(grid: &Grid, tau: &[[f64; 2]], within: Option<f64>) -> DiffeoNorms {
    let n = grid.n_dims();
    let h = grid.spacing();
    let at = |idx: [usize; 2], d: [i64; 2]| -> [f64; 2] {
        let mut j = [0usize; 2];
        for a in 0..n {
            j[a] = grid.modulo(a, idx[a] as i64 + d[a]);
        }
        tau[grid.ravel(j)]
    };
    let unit = |a: usize, s: i64| -> [i64; 2] {
        let mut d = [0i64; 2];
        d[a] = s;
        d
    };
    let mut norms = DiffeoNorms::default();
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for (flat, &t) in tau.iter().enumerate() {
        let idx = grid.unravel(flat);
        if let Some(r) = within {
            let x = grid.position(flat);
            if (0..n).any(|a| x[a].abs() > r) {
                continue;
            }
        }
        norms.sup_tau = norms.sup_tau.max((t[0] * t[0] + t[1] * t[1]).sqrt());
        for ((l, u), &ti) in lo.iter_mut().zip(hi.iter_mut()).zip(&t).take(n) {
            *l = l.min(ti);
            *u = u.max(ti);
        }
        for (i, &ti) in t.iter().enumerate().take(n) {
            let mut row = 0.0;
            for a in 0..n {
                let d = (at(idx, unit(a, 1))[i] - at(idx, unit(a, -1))[i]) / (2.0 * h);
                row += d.abs();
            }
            norms.sup_dtau = norms.sup_dtau.max(row);
            for a in 0..n {
                for b in a..n {
                    let v = if a == b {
                        (at(idx, unit(a, 1))[i] - 2.0 * ti + at(idx, unit(a, -1))[i]) / (h * h)
                    } else {
                        let mut pp = [0i64; 2];
                        pp[a] = 1;
                        pp[b] = 1;
                        let mut pm = pp;
                        pm[b] = -1;
                        let mut mp = pp;
                        mp[a] = -1;
                        let mm = [-pp[0], -pp[1]];
                        (at(idx, pp)[i] - at(idx, pm)[i] - at(idx, mp)[i] + at(idx, mm)[i]) / (4.0 * h * h)
                    };
                    norms.sup_d2tau = norms.sup_d2tau.max(v.abs());
                }
            }
        }
    }
    if lo[0].is_finite() {
        norms.osc_tau = (0..n).map(|i| (hi[i] - lo[i]).powi(2)).sum::<f64>().sqrt();
    }
    norms
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_field_norms() {
        let f = DiffeoField::zero(Grid::new_2d(8, 8, 1.0).unwrap());
        assert_eq!(f.norms(), DiffeoNorms::default());
        assert!(f.is_zero());
    }

    #[test]
    fn osc_bounded_by_twice_sup() {
        let grid = Grid::new_2d(16, 16, 0.5).unwrap();
        let f = DiffeoField::sinusoidal(grid, 0.3, 2).unwrap();
        let n = f.norms();
        assert!(n.osc_tau <= 2.0 * n.sup_tau + 1e-15);
    }

    #[test]
    fn dilation_field_is_linear_inside() {
        let grid = Grid::new_2d(64, 64, 1.0).unwrap();
        let c = 0.01;
        let f = DiffeoField::dilation(grid, c).unwrap();
        let inner = f.sup_dtau_within(DiffeoField::dilation_interior(&grid));
        assert!((inner - c).abs() <= 1e-8, "{inner}");
    }
}
