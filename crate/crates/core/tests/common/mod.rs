//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use lqscatter::signal::{lq_norm_pow, Grid, Signal};
use lqscatter::synth::{band_limit, localized_noise, GaborAtom, GaborMixture};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Print one outcome line in the fixed acceptance format and return the
/// verdict so the caller can assert on it.
pub fn report(id: u32, name: &str, pass: bool, detail: impl AsRef<str>) -> bool {
    println!(
        "criterion {id:>2} {name}: {} ({})",
        if pass { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    pass
}

pub fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn energy(f: &Signal) -> f64 {
    lq_norm_pow(f, 2.0).unwrap()
}

/// Zero-mean real noise in the band `[low, high]`, localized around the
/// origin by a Gaussian of standard deviation `width` (physical units).
pub fn localized_band(grid: Grid, low: f64, high: f64, width: f64, seed: u64) -> Signal {
    localized_noise(grid, low, high, width, seed)
}

/// Real part of a random Gabor mixture, band-limited below `0.8` Nyquist.
pub fn smooth_mixture(
    grid: Grid,
    count: usize,
    spread: f64,
    width: f64,
    max_frequency: f64,
    seed: u64,
) -> (GaborMixture, Signal) {
    let g = GaborMixture::random(grid.n_dims(), count, spread, width, max_frequency, seed);
    let f = g.sample(&grid);
    (g, f)
}

pub fn real_band(f: &Signal, low: f64, high: f64) -> Signal {
    band_limit(&f.map(|z| Complex64::new(z.re, 0.0)), low, high)
}

/// Largest deviation between two slices relative to the largest magnitude.
pub fn max_relative(a: &[f64], b: &[f64]) -> f64 {
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let scale = a.iter().chain(b).map(|v| v.abs()).fold(0.0, f64::max);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

pub fn max_abs(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Real, zero-mean sum of `count` Gabor atoms centred within half a sample
/// of the origin, with random phases, widths in `widths` and frequency
/// magnitudes in `frequencies` (random directions in 2D). Compactly
/// concentrated in space, smooth in frequency.
pub fn compact_mixture(grid: Grid, count: usize, widths: (f64, f64), frequencies: (f64, f64), seed: u64) -> Signal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two_d = grid.n_dims() == 2;
    let mut f = Signal::zeros(grid);
    for _ in 0..count {
        let radius = rng.gen_range(frequencies.0..frequencies.1);
        let direction = rng.gen_range(0.0..std::f64::consts::TAU);
        let frequency = if two_d {
            [radius * direction.cos(), radius * direction.sin()]
        } else {
            [radius, 0.0]
        };
        let atom = GaborAtom {
            amplitude: Complex64::from_polar(rng.gen_range(0.5..1.0), rng.gen_range(0.0..std::f64::consts::TAU)),
            center: [
                rng.gen_range(-0.5..0.5),
                if two_d { rng.gen_range(-0.5..0.5) } else { 0.0 },
            ],
            width: rng.gen_range(widths.0..widths.1),
            frequency,
        };
        f = f.add(&atom.sample(&grid)).unwrap();
    }
    real_band(&f, 0.5 * grid.fundamental(), grid.nyquist())
}
