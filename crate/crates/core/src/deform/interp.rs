//! Evaluation of the trigonometric interpolant of a sampled signal at
//! arbitrary points. The Nyquist term of an even axis is split evenly
//! between `+pi/h` and `-pi/h`, so real signals interpolate to real values.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::signal::{fourier, Grid, Signal};

/// Interpolation weights `e^{i w_k y} / N` along one axis, in DFT bin order.
pub(crate) fn phase_row(grid: &Grid, axis: usize, y: f64) -> Vec<Complex64> {
    let n = grid.extent(axis);
    let inv_n = 1.0 / n as f64;
    let step = 2.0 * std::f64::consts::PI * y / grid.period(axis);
    let base = Complex64::from_polar(1.0, step);
    let mut row = vec![Complex64::new(0.0, 0.0); n];
    let positive = n.div_ceil(2);
    let mut p = Complex64::new(1.0, 0.0);
    for j in 0..positive {
        if j % 32 == 0 {
            p = Complex64::from_polar(1.0, step * j as f64);
        }
        row[j] = p * inv_n;
        if j > 0 {
            row[n - j] = p.conj() * inv_n;
        }
        p *= base;
    }
    if n.is_multiple_of(2) {
        row[n / 2] = Complex64::new((step * (n / 2) as f64).cos() * inv_n, 0.0);
    }
    row
}

/// The trigonometric interpolant of a sampled signal.
#[derive(Debug, Clone)]
pub struct TrigInterpolant {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl TrigInterpolant {
    pub fn new(f: &Signal) -> Self {
        let mut coeffs = f.samples().to_vec();
        fourier::forward(f.grid(), &mut coeffs);
        TrigInterpolant {
            grid: *f.grid(),
            coeffs,
        }
    }

    /// Value at the physical point `y` (second coordinate ignored in 1D).
    pub fn eval(&self, y: [f64; 2]) -> Complex64 {
        let row0 = phase_row(&self.grid, 0, y[0]);
        if self.grid.n_dims() == 1 {
            return row0.iter().zip(&self.coeffs).map(|(a, b)| a * b).sum();
        }
        let row1 = phase_row(&self.grid, 1, y[1]);
        let cols = self.grid.extent(1);
        row0.iter()
            .zip(self.coeffs.chunks_exact(cols))
            .map(|(a, line)| a * line.iter().zip(&row1).map(|(c, e)| c * e).sum::<Complex64>())
            .sum()
    }

    /// Evaluate at many points in parallel; output order matches input.
    pub fn eval_many(&self, points: &[[f64; 2]]) -> Vec<Complex64> {
        points.par_iter().map(|&y| self.eval(y)).collect()
    }
}

/// Resample `f` at the points whose axis-`a` coordinate is `maps[a]` of
/// the grid coordinate, for maps acting independently on each axis.
pub fn resample_separable(f: &Signal, maps: &[&(dyn Fn(f64) -> f64 + Sync)]) -> Signal {
    let grid = *f.grid();
    assert_eq!(maps.len(), grid.n_dims());
    let mut coeffs = f.samples().to_vec();
    fourier::forward(&grid, &mut coeffs);
    let matrix = |axis: usize| -> Vec<Vec<Complex64>> {
        (0..grid.extent(axis))
            .into_par_iter()
            .map(|i| phase_row(&grid, axis, maps[axis](grid.coordinate(axis, i))))
            .collect()
    };
    let dot = |row: &[Complex64], data: &[Complex64]| -> Complex64 { row.iter().zip(data).map(|(a, b)| a * b).sum() };
    if grid.n_dims() == 1 {
        let m0 = matrix(0);
        let out = m0.par_iter().map(|row| dot(row, &coeffs)).collect();
        return Signal::from_raw(grid, out);
    }
    let (rows, cols) = (grid.extent(0), grid.extent(1));
    let m1 = matrix(1);
    // Along axis 1: t[k0][i1] = sum_k1 M1[i1][k1] C[k0][k1], stored transposed.
    let t: Vec<Vec<Complex64>> = (0..cols)
        .into_par_iter()
        .map(|i1| {
            (0..rows)
                .map(|k0| dot(&m1[i1], &coeffs[k0 * cols..(k0 + 1) * cols]))
                .collect()
        })
        .collect();
    let m0 = matrix(0);
    let t = &t;
    let out: Vec<Complex64> = (0..rows)
        .into_par_iter()
        .flat_map_iter(|i0| {
            let row = &m0[i0];
            (0..cols).map(move |i1| dot(row, &t[i1])).collect::<Vec<_>>()
        })
        .collect();
    Signal::from_raw(grid, out)
}
