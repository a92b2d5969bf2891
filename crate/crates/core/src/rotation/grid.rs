use std::f64::consts::PI;

use crate::error::{Result, ScatterError};

/// `N` equally spaced rotations of the plane with a uniform Haar weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationGrid {
    count: usize,
    total_mass: f64,
}

impl RotationGrid {
    /// `count` angles with total Haar mass 1.
    pub fn new(count: usize) -> Result<Self> {
        Self::with_mass(count, 1.0)
    }

    pub fn with_mass(count: usize, total_mass: f64) -> Result<Self> {
        if count == 0 {
            return Err(ScatterError::Config("rotation grid needs at least one angle".into()));
        }
        if !(total_mass.is_finite() && total_mass > 0.0) {
            return Err(ScatterError::Config(format!(
                "Haar mass must be positive and finite, got {total_mass}"
            )));
        }
        Ok(RotationGrid { count, total_mass })
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Angle `2 pi k / N`.
    #[inline]
    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.count as f64
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.angle(k)).collect()
    }

    /// Haar weight `mu / N` carried by every angle.
    #[inline]
    pub fn weight(&self) -> f64 {
        self.total_mass / self.count as f64
    }

    /// Index `k` with `theta = 2 pi k / N` (mod `2 pi`), or a domain error if
    /// `theta` is not on the grid.
    pub fn index_of(&self, theta: f64) -> Result<usize> {
        let steps = theta / (2.0 * PI) * self.count as f64;
        let k = steps.round();
        if !theta.is_finite() || (steps - k).abs() > 1e-9 {
            return Err(ScatterError::Domain(format!(
                "angle {theta} is not a multiple of 2 pi / {}",
                self.count
            )));
        }
        Ok((k as i64).rem_euclid(self.count as i64) as usize)
    }
}

/// `(cos theta, sin theta)` with exact values at multiples of 90 degrees.
pub fn cos_sin(theta: f64) -> (f64, f64) {
    let quarter = theta / (PI / 2.0);
    let q = quarter.round();
    if (quarter - q).abs() < 1e-12 {
        match (q as i64).rem_euclid(4) {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    } else {
        (theta.cos(), theta.sin())
    }
}

/// `R_theta^-1 v` for the counter-clockwise rotation `R_theta` acting on
/// `(axis 0, axis 1)` coordinates.
#[inline]
pub fn rotate_inverse(v: [f64; 2], cs: (f64, f64)) -> [f64; 2] {
    let (c, s) = cs;
    [c * v[0] + s * v[1], -s * v[0] + c * v[1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_and_weights() {
        let g = RotationGrid::new(8).unwrap();
        assert_eq!(g.angles().len(), 8);
        assert!((g.weight() - 0.125).abs() < 1e-15);
        assert_eq!(g.index_of(PI / 4.0).unwrap(), 1);
        assert_eq!(g.index_of(-PI / 4.0).unwrap(), 7);
        assert!(g.index_of(0.1).is_err());
        assert!(RotationGrid::new(0).is_err());
    }

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(cos_sin(PI / 2.0), (0.0, 1.0));
        assert_eq!(rotate_inverse([2.0, 3.0], cos_sin(PI / 2.0)), [3.0, -2.0]);
    }
}
