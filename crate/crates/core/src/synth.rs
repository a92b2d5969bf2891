//! Seeded synthetic test signals: band-limited noise, localized noise,
//! and closed-form Gabor mixtures that can be evaluated off the grid.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::signal::{Grid, Signal, Spectrum};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn band_mask(grid: &Grid, values: &mut [Complex64], low: f64, high: f64) {
    for (k, v) in values.iter_mut().enumerate() {
        let idx = grid.unravel(k);
        let w = grid.frequency_vector(k);
        let r = (w[0] * w[0] + w[1] * w[1]).sqrt();
        let nyquist = (0..grid.n_dims()).any(|a| grid.is_nyquist(a, idx[a]));
        let keep = !nyquist && r <= high && (r >= low || (low == 0.0 && r == 0.0));
        if !keep {
            *v = Complex64::new(0.0, 0.0);
        }
    }
}

/// Keep only the frequencies with `low <= |w| <= high` (the Nyquist bins
/// are always removed). Real inputs stay real.
pub fn band_limit(f: &Signal, low: f64, high: f64) -> Signal {
    let spectrum = f.fourier();
    let mut values = spectrum.values().to_vec();
    band_mask(f.grid(), &mut values, low, high);
    let out = Spectrum::new(*f.grid(), values).expect("length preserved").to_signal();
    if f.samples().iter().all(|z| z.im == 0.0) {
        out.map(|z| Complex64::new(z.re, 0.0))
    } else {
        out
    }
}

/// Real Gaussian white noise restricted to `low <= |w| <= high` and scaled
/// to unit RMS. `low = 0` keeps the mean.
pub fn band_limited_noise(grid: Grid, low: f64, high: f64, seed: u64) -> Signal {
    let mut r = rng(seed);
    let samples = (0..grid.len())
        .map(|_| Complex64::new(r.sample(StandardNormal), 0.0))
        .collect();
    let white = Signal::new(grid, samples).expect("finite noise");
    let f = band_limit(&white, low, high);
    let rms = (f.samples().iter().map(|z| z.norm_sqr()).sum::<f64>() / grid.len() as f64).sqrt();
    if rms > 0.0 {
        f.scale(Complex64::new(1.0 / rms, 0.0))
    } else {
        f
    }
}

/// Band-limited noise under a Gaussian window of standard deviation
/// `width` centred at the origin, band-limited again after windowing.
pub fn localized_noise(grid: Grid, low: f64, high: f64, width: f64, seed: u64) -> Signal {
    let noise = band_limited_noise(grid, low, high, seed);
    let windowed = Signal::from_fn(grid, |x| {
        Complex64::new((-(x[0] * x[0] + x[1] * x[1]) / (2.0 * width * width)).exp(), 0.0)
    });
    let product = Signal::new(
        grid,
        noise
            .samples()
            .iter()
            .zip(windowed.samples())
            .map(|(a, b)| a * b)
            .collect(),
    )
    .expect("finite product");
    band_limit(&product, low, high)
}

/// Isotropic Gaussian `exp(-|x|^2 / (2 width^2))`.
pub fn gaussian_bump(grid: Grid, width: f64) -> Signal {
    GaborAtom::gaussian(1.0, width).sample(&grid)
}

/// `e^{i w . x}` with an integer number of cycles per axis, so that the
/// wave is periodic on the grid.
pub fn plane_wave(grid: Grid, cycles: [i64; 2]) -> Signal {
    let w = [
        2.0 * std::f64::consts::PI * cycles[0] as f64 / grid.period(0),
        if grid.n_dims() == 2 {
            2.0 * std::f64::consts::PI * cycles[1] as f64 / grid.period(1)
        } else {
            0.0
        },
    ];
    Signal::from_fn(grid, |x| Complex64::from_polar(1.0, w[0] * x[0] + w[1] * x[1]))
}

/// `amplitude exp(-|x - c|^2 / (2 s^2)) e^{i w . (x - c)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaborAtom {
    pub amplitude: Complex64,
    pub center: [f64; 2],
    pub width: f64,
    pub frequency: [f64; 2],
}

impl GaborAtom {
    pub fn gaussian(amplitude: f64, width: f64) -> Self {
        GaborAtom {
            amplitude: Complex64::new(amplitude, 0.0),
            center: [0.0; 2],
            width,
            frequency: [0.0; 2],
        }
    }

    pub fn eval(&self, x: [f64; 2]) -> Complex64 {
        let d = [x[0] - self.center[0], x[1] - self.center[1]];
        let env = (-(d[0] * d[0] + d[1] * d[1]) / (2.0 * self.width * self.width)).exp();
        self.amplitude * env * Complex64::from_polar(1.0, self.frequency[0] * d[0] + self.frequency[1] * d[1])
    }

    pub fn sample(&self, grid: &Grid) -> Signal {
        Signal::from_fn(*grid, |x| self.eval(x))
    }
}

/// A finite sum of Gabor atoms: a smooth, localized, effectively
/// band-limited function with a closed form valid anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct GaborMixture {
    pub n_dims: usize,
    pub atoms: Vec<GaborAtom>,
}

impl GaborMixture {
    /// `count` random atoms with centres within `spread` of the origin,
    /// widths in `[min_width, 2 min_width]`, and frequency magnitudes at
    /// most `max_frequency`.
    pub fn random(n_dims: usize, count: usize, spread: f64, min_width: f64, max_frequency: f64, seed: u64) -> Self {
        let mut r = rng(seed);
        let atoms = (0..count)
            .map(|_| {
                let mut center = [0.0; 2];
                let mut frequency = [0.0; 2];
                for c in center.iter_mut().take(n_dims) {
                    *c = r.gen_range(-spread..=spread);
                }
                let radius = r.gen_range(0.0..=max_frequency);
                if n_dims == 1 {
                    frequency[0] = if r.gen_bool(0.5) { radius } else { -radius };
                } else {
                    let t = r.gen_range(0.0..std::f64::consts::TAU);
                    frequency = [radius * t.cos(), radius * t.sin()];
                }
                GaborAtom {
                    amplitude: Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)),
                    center,
                    width: r.gen_range(min_width..=2.0 * min_width),
                    frequency,
                }
            })
            .collect();
        GaborMixture { n_dims, atoms }
    }

    pub fn eval(&self, x: [f64; 2]) -> Complex64 {
        let x = if self.n_dims == 1 { [x[0], 0.0] } else { x };
        self.atoms.iter().map(|a| a.eval(x)).sum()
    }

    pub fn sample(&self, grid: &Grid) -> Signal {
        Signal::from_fn(*grid, |x| self.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_is_seeded_and_band_limited() {
        let grid = Grid::new_1d(128, 1.0).unwrap();
        let a = band_limited_noise(grid, 0.0, 1.0, 7);
        assert_eq!(a, band_limited_noise(grid, 0.0, 1.0, 7));
        assert_ne!(a, band_limited_noise(grid, 0.0, 1.0, 8));
        assert!(a.samples().iter().all(|z| z.im == 0.0));
        let spec = a.fourier();
        for k in 0..grid.len() {
            if grid.frequency(0, k).abs() > 1.0 {
                assert!(spec.values()[k].norm() < 1e-10);
            }
        }
    }

    #[test]
    fn band_pass_removes_mean() {
        let grid = Grid::new_2d(32, 32, 1.0).unwrap();
        let f = localized_noise(grid, 0.2, 2.0, 5.0, 1);
        assert!(f.mean().norm() < 1e-14);
    }
}
