use std::f64::consts::PI;

use crate::error::{Result, ScatterError};

/// Smallest extent accepted along any axis.
pub const MIN_EXTENT: usize = 4;

/// A uniform periodic grid in one or two dimensions.
///
/// Sample `i` along an axis sits at the wrapped coordinate `i * h` for
/// `i < ceil(N/2)` and `(i - N) * h` otherwise, so the origin is sample 0 and
/// the fundamental cell is `[-N h / 2, N h / 2)`. Frequencies use the same
/// wrapping; for even `N` the Nyquist bin is reported as negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dims: usize,
    extents: [usize; 2],
    spacing: f64,
}

impl Grid {
    pub fn new(extents: &[usize], spacing: f64) -> Result<Self> {
        if extents.is_empty() || extents.len() > 2 {
            return Err(ScatterError::Dimension(format!(
                "grids have 1 or 2 dimensions, got {}",
                extents.len()
            )));
        }
        if let Some(&bad) = extents.iter().find(|&&e| e < MIN_EXTENT) {
            return Err(ScatterError::Dimension(format!(
                "every extent must be at least {MIN_EXTENT}, got {bad}"
            )));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(ScatterError::Domain(format!(
                "grid spacing must be positive and finite, got {spacing}"
            )));
        }
        extents
            .iter()
            .try_fold(1usize, |acc, &e| acc.checked_mul(e))
            .ok_or_else(|| ScatterError::Dimension("sample count overflows usize".into()))?;
        let mut ext = [1usize; 2];
        ext[..extents.len()].copy_from_slice(extents);
        Ok(Grid {
            dims: extents.len(),
            extents: ext,
            spacing,
        })
    }

    pub fn new_1d(n: usize, spacing: f64) -> Result<Self> {
        Self::new(&[n], spacing)
    }

    pub fn new_2d(rows: usize, cols: usize, spacing: f64) -> Result<Self> {
        Self::new(&[rows, cols], spacing)
    }

    #[inline]
    pub fn n_dims(&self) -> usize {
        self.dims
    }

    #[inline]
    pub fn extents(&self) -> &[usize] {
        &self.extents[..self.dims]
    }

    #[inline]
    pub fn extent(&self, axis: usize) -> usize {
        self.extents[axis]
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Total number of samples.
    #[inline]
    pub fn len(&self) -> usize {
        self.extents[0] * self.extents[1]
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight `h^n` of a single sample.
    #[inline]
    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(self.dims as i32)
    }

    /// Physical length `N h` of the fundamental cell along `axis`.
    #[inline]
    pub fn period(&self, axis: usize) -> f64 {
        self.extents[axis] as f64 * self.spacing
    }

    /// Angular Nyquist frequency `pi / h`.
    #[inline]
    pub fn nyquist(&self) -> f64 {
        PI / self.spacing
    }

    /// Smallest nonzero angular frequency over all axes.
    pub fn fundamental(&self) -> f64 {
        self.extents()
            .iter()
            .map(|&n| 2.0 * PI / (n as f64 * self.spacing))
            .fold(f64::INFINITY, f64::min)
    }

    /// Signed wrapped index of sample `i` along `axis`.
    #[inline]
    pub fn wrapped_index(&self, axis: usize, i: usize) -> i64 {
        wrap_index(i, self.extents[axis])
    }

    /// Physical coordinate of sample `i` along `axis`.
    #[inline]
    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        self.wrapped_index(axis, i) as f64 * self.spacing
    }

    /// Angular frequency of DFT bin `k` along `axis`.
    #[inline]
    pub fn frequency(&self, axis: usize, k: usize) -> f64 {
        2.0 * PI * self.wrapped_index(axis, k) as f64 / self.period(axis)
    }

    /// True if bin `k` is the (sign-ambiguous) Nyquist bin of an even axis.
    #[inline]
    pub fn is_nyquist(&self, axis: usize, k: usize) -> bool {
        let n = self.extents[axis];
        n.is_multiple_of(2) && k == n / 2
    }

    /// Split a row-major flat index into per-axis indices.
    #[inline]
    pub fn unravel(&self, flat: usize) -> [usize; 2] {
        if self.dims == 1 {
            [flat, 0]
        } else {
            [flat / self.extents[1], flat % self.extents[1]]
        }
    }

    #[inline]
    pub fn ravel(&self, idx: [usize; 2]) -> usize {
        if self.dims == 1 {
            idx[0]
        } else {
            idx[0] * self.extents[1] + idx[1]
        }
    }

    /// Physical position of a flat sample index; unused trailing entries are 0.
    pub fn position(&self, flat: usize) -> [f64; 2] {
        let idx = self.unravel(flat);
        let mut x = [0.0; 2];
        for (axis, xi) in x.iter_mut().enumerate().take(self.dims) {
            *xi = self.coordinate(axis, idx[axis]);
        }
        x
    }

    /// Angular frequency vector of a flat DFT index.
    pub fn frequency_vector(&self, flat: usize) -> [f64; 2] {
        let idx = self.unravel(flat);
        let mut w = [0.0; 2];
        for (axis, wi) in w.iter_mut().enumerate().take(self.dims) {
            *wi = self.frequency(axis, idx[axis]);
        }
        w
    }

    /// Wrap an arbitrary integer index onto `0..extent`.
    #[inline]
    pub fn modulo(&self, axis: usize, i: i64) -> usize {
        i.rem_euclid(self.extents[axis] as i64) as usize
    }
}

#[inline]
pub(crate) fn wrap_index(i: usize, n: usize) -> i64 {
    if i < n.div_ceil(2) {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_or_degenerate_grids() {
        assert!(Grid::new_1d(3, 1.0).is_err());
        assert!(Grid::new_1d(8, 0.0).is_err());
        assert!(Grid::new_1d(8, f64::NAN).is_err());
        assert!(Grid::new(&[4, 4, 4], 1.0).is_err());
        assert!(Grid::new(&[], 1.0).is_err());
    }

    #[test]
    fn wrapped_coordinates_and_frequencies() {
        let g = Grid::new_1d(8, 0.5).unwrap();
        let xs: Vec<f64> = (0..8).map(|i| g.coordinate(0, i)).collect();
        assert_eq!(xs, vec![0.0, 0.5, 1.0, 1.5, -2.0, -1.5, -1.0, -0.5]);
        assert!(g.is_nyquist(0, 4));
        assert!((g.frequency(0, 4) + g.nyquist()).abs() < 1e-12);
        let odd = Grid::new_1d(5, 1.0).unwrap();
        assert_eq!(odd.wrapped_index(0, 2), 2);
        assert_eq!(odd.wrapped_index(0, 3), -2);
        assert!(!odd.is_nyquist(0, 2));
    }

    #[test]
    fn ravel_roundtrip_2d() {
        let g = Grid::new_2d(4, 6, 1.0).unwrap();
        for flat in 0..g.len() {
            assert_eq!(g.ravel(g.unravel(flat)), flat);
        }
        assert_eq!(g.unravel(7), [1, 1]);
    }
}
