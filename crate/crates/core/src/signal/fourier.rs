//! Thin wrapper over `rustfft` for row-major 1D and 2D buffers.
//!
//! Plans are cached per thread, so repeated transforms on the same grid do
//! not re-plan. All transforms are unnormalized in the forward direction and
//! divide by the sample count in the inverse direction.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::grid::Grid;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn process_rows(data: &mut [Complex64], row_len: usize, direction: FftDirection) {
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft(row_len, direction));
    fft.process(data);
}

fn transpose(src: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); src.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = src[r * cols + c];
        }
    }
    out
}

fn transform(grid: &Grid, data: &mut Vec<Complex64>, direction: FftDirection) {
    debug_assert_eq!(data.len(), grid.len());
    match grid.n_dims() {
        1 => process_rows(data, grid.extent(0), direction),
        _ => {
            let (rows, cols) = (grid.extent(0), grid.extent(1));
            process_rows(data, cols, direction);
            let mut t = transpose(data, rows, cols);
            process_rows(&mut t, rows, direction);
            *data = transpose(&t, cols, rows);
        }
    }
}

/// In-place forward DFT, `X_k = sum_j x_j e^{-2 pi i j k / N}`.
pub fn forward(grid: &Grid, data: &mut Vec<Complex64>) {
    transform(grid, data, FftDirection::Forward);
}

/// In-place inverse DFT including the `1/N` factor.
pub fn inverse(grid: &Grid, data: &mut Vec<Complex64>) {
    transform(grid, data, FftDirection::Inverse);
    let scale = 1.0 / grid.len() as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(grid: &Grid, x: &[Complex64]) -> Vec<Complex64> {
        let n = grid.len();
        (0..n)
            .map(|k| {
                let kk = grid.unravel(k);
                (0..n)
                    .map(|j| {
                        let jj = grid.unravel(j);
                        let mut phase = 0.0;
                        for axis in 0..grid.n_dims() {
                            phase += (kk[axis] * jj[axis]) as f64 / grid.extent(axis) as f64;
                        }
                        x[j] * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * phase)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft_in_two_dimensions() {
        let grid = Grid::new_2d(4, 6, 1.0).unwrap();
        let x: Vec<Complex64> = (0..grid.len())
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let mut y = x.clone();
        forward(&grid, &mut y);
        let expect = naive_dft(&grid, &x);
        for (a, b) in y.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-12);
        }
        inverse(&grid, &mut y);
        for (a, b) in y.iter().zip(&x) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
