//! Sampled signals on uniform periodic grids.
//!
//! Every integral is a Riemann sum with weight `h^n` per sample, and every
//! convolution is circular. A [`Spectrum`] holds samples of a continuous
//! Fourier transform `g^(w) = \int g(x) e^{-i x.w} dx` at the grid
//! frequencies, so multiplying spectra and returning to space realizes
//! `f * g` without any extra scale factors.

pub mod fourier;
mod grid;
pub mod io;

pub use grid::{Grid, MIN_EXTENT};

use num_complex::Complex64;

use crate::error::{Result, ScatterError};

/// Complex samples, one per grid point, in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl Signal {
    /// Wrap `samples`; fails on length mismatch or non-finite values.
    pub fn new(grid: Grid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(ScatterError::Dimension(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        if let Some(pos) = samples.iter().position(|z| !z.is_finite()) {
            return Err(ScatterError::Numeric(format!("sample {pos} is not finite")));
        }
        Ok(Signal { grid, samples })
    }

    pub(crate) fn from_raw(grid: Grid, samples: Vec<Complex64>) -> Self {
        debug_assert_eq!(samples.len(), grid.len());
        Signal { grid, samples }
    }

    pub fn zeros(grid: Grid) -> Self {
        Signal::from_raw(grid, vec![Complex64::new(0.0, 0.0); grid.len()])
    }

    pub fn constant(grid: Grid, value: Complex64) -> Self {
        Signal::from_raw(grid, vec![value; grid.len()])
    }

    /// Sample a function of the physical position. For 1D grids the second
    /// coordinate is 0.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> Complex64) -> Self {
        let samples = (0..grid.len()).map(|i| f(grid.position(i))).collect();
        Signal::from_raw(grid, samples)
    }

    pub fn from_real(grid: Grid, values: &[f64]) -> Result<Self> {
        Signal::new(grid, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Discrete delta of unit mass: `1/h^n` at the origin.
    pub fn delta(grid: Grid) -> Self {
        let mut s = Signal::zeros(grid);
        s.samples[0] = Complex64::new(1.0 / grid.cell_volume(), 0.0);
        s
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Signal {
        Signal::from_raw(self.grid, self.samples.iter().map(|&z| f(z)).collect())
    }

    pub fn scale(&self, c: Complex64) -> Signal {
        self.map(|z| z * c)
    }

    fn zip_with(&self, other: &Signal, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Signal> {
        ensure_same_grid(&self.grid, &other.grid)?;
        Ok(Signal::from_raw(
            self.grid,
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    pub fn add(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Signal) -> Result<Signal> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Spatial average over the fundamental cell.
    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.samples.len() as f64
    }

    pub fn remove_mean(&self) -> Signal {
        let m = self.mean();
        self.map(|z| z - m)
    }

    /// Largest pointwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Signal) -> Result<f64> {
        ensure_same_grid(&self.grid, &other.grid)?;
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Approximate continuous Fourier transform, `h^n * DFT(samples)`.
    pub fn fourier(&self) -> Spectrum {
        let mut data = self.samples.clone();
        fourier::forward(&self.grid, &mut data);
        let w = self.grid.cell_volume();
        for v in data.iter_mut() {
            *v *= w;
        }
        Spectrum::from_raw(self.grid, data)
    }

    pub(crate) fn ensure_finite(&self, what: &str) -> Result<()> {
        if self.samples.iter().all(|z| z.is_finite()) {
            Ok(())
        } else {
            Err(ScatterError::Numeric(format!("{what} produced non-finite samples")))
        }
    }
}

/// Samples of a continuous Fourier transform at the grid frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: Grid,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(ScatterError::Dimension(format!(
                "expected {} frequency samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Spectrum { grid, values })
    }

    pub(crate) fn from_raw(grid: Grid, values: Vec<Complex64>) -> Self {
        Spectrum { grid, values }
    }

    /// Evaluate a transfer function at every grid frequency vector.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|k| f(grid.frequency_vector(k))).collect();
        Spectrum { grid, values }
    }

    /// Like [`Spectrum::from_fn`] but also passes the flat index.
    pub fn from_fn_indexed(grid: &Grid, f: impl Fn(usize, [f64; 2]) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|k| f(k, grid.frequency_vector(k))).collect();
        Spectrum { grid: *grid, values }
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Return to space: `IDFT(values) / h^n`.
    pub fn to_signal(&self) -> Signal {
        let mut data = self.values.clone();
        fourier::inverse(&self.grid, &mut data);
        let w = 1.0 / self.grid.cell_volume();
        for v in data.iter_mut() {
            *v *= w;
        }
        Signal::from_raw(self.grid, data)
    }

    /// Pointwise product with another spectrum on the same grid.
    pub fn multiply(&self, other: &Spectrum) -> Result<Spectrum> {
        ensure_same_grid(&self.grid, &other.grid)?;
        Ok(Spectrum::from_raw(
            self.grid,
            self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        ))
    }

    /// Value at the zero frequency.
    pub fn dc(&self) -> Complex64 {
        self.values[0]
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Pointwise nonexpansive nonlinearity applied between layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Contraction {
    /// `a -> |a|`.
    #[default]
    Modulus,
    /// `a -> max(0, Re a)`, embedded back into the complex plane.
    ComplexRelu,
}

impl Contraction {
    #[inline]
    pub fn apply(self, a: Complex64) -> Complex64 {
        match self {
            Contraction::Modulus => Complex64::new(a.norm(), 0.0),
            Contraction::ComplexRelu => Complex64::new(a.re.max(0.0), 0.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Contraction::Modulus => "modulus",
            Contraction::ComplexRelu => "relu",
        }
    }
}

impl std::str::FromStr for Contraction {
    type Err = ScatterError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "modulus" | "abs" => Ok(Contraction::Modulus),
            "relu" | "complex-relu" | "complexrelu" => Ok(Contraction::ComplexRelu),
            other => Err(ScatterError::Config(format!("unknown contraction '{other}'"))),
        }
    }
}

pub(crate) fn ensure_same_grid(a: &Grid, b: &Grid) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(ScatterError::Dimension(format!("grid mismatch: {:?} vs {:?}", a, b)))
    }
}

/// Circular convolution of `f` with the filter whose transform is `g_hat`.
pub fn convolve(f: &Signal, g_hat: &Spectrum) -> Result<Signal> {
    ensure_same_grid(f.grid(), g_hat.grid())?;
    Ok(f.fourier().multiply(g_hat)?.to_signal())
}

/// Riemann-sum `L^q` norm, `(sum |f|^q h^n)^(1/q)`.
pub fn lq_norm(f: &Signal, q: f64) -> Result<f64> {
    Ok(lq_norm_pow(f, q)?.powf(1.0 / q))
}

/// `lq_norm(f, q)^q`, computed without the final root.
pub fn lq_norm_pow(f: &Signal, q: f64) -> Result<f64> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(ScatterError::Domain(format!("q must lie in [1, inf), got {q}")));
    }
    Ok(lq_pow_sum(f.samples(), q) * f.grid().cell_volume())
}

/// Sequential sum of `|z|^q`; the fixed order keeps results reproducible.
pub(crate) fn lq_pow_sum(samples: &[Complex64], q: f64) -> f64 {
    if q == 2.0 {
        samples.iter().map(|z| z.norm_sqr()).sum()
    } else if q == 1.0 {
        samples.iter().map(|z| z.norm()).sum()
    } else {
        samples.iter().map(|z| z.norm().powf(q)).sum()
    }
}

pub fn apply_contraction(f: &Signal, kappa: Contraction) -> Signal {
    f.map(|z| kappa.apply(z))
}

/// Circular shift by whole samples: `out(x) = f(x - shift h)`.
pub fn translate(f: &Signal, shift: &[i64]) -> Result<Signal> {
    let grid = *f.grid();
    if shift.len() != grid.n_dims() {
        return Err(ScatterError::Dimension(format!(
            "shift has {} components for a {}-dimensional grid",
            shift.len(),
            grid.n_dims()
        )));
    }
    let samples = (0..grid.len())
        .map(|flat| {
            let idx = grid.unravel(flat);
            let mut src = [0usize; 2];
            for axis in 0..grid.n_dims() {
                src[axis] = grid.modulo(axis, idx[axis] as i64 - shift[axis]);
            }
            f.samples()[grid.ravel(src)]
        })
        .collect();
    Ok(Signal::from_raw(grid, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_signal(grid: Grid, seed: u64) -> Signal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Signal::from_raw(
            grid,
            (0..grid.len())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    fn direct_convolution(f: &Signal, g: &Signal) -> Signal {
        let grid = *f.grid();
        let w = grid.cell_volume();
        let out = (0..grid.len())
            .map(|i| {
                let ii = grid.unravel(i);
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..grid.len() {
                    let jj = grid.unravel(j);
                    let mut d = [0usize; 2];
                    for axis in 0..grid.n_dims() {
                        d[axis] = grid.modulo(axis, ii[axis] as i64 - jj[axis] as i64);
                    }
                    acc += f.samples()[j] * g.samples()[grid.ravel(d)];
                }
                acc * w
            })
            .collect();
        Signal::from_raw(grid, out)
    }

    fn rel_l2(a: &Signal, b: &Signal) -> f64 {
        let d = lq_norm(&a.sub(b).unwrap(), 2.0).unwrap();
        d / lq_norm(b, 2.0).unwrap()
    }

    #[test]
    fn signal_rejects_bad_input() {
        let g = Grid::new_1d(4, 1.0).unwrap();
        assert!(Signal::new(g, vec![Complex64::new(0.0, 0.0); 3]).is_err());
        let mut v = vec![Complex64::new(0.0, 0.0); 4];
        v[2] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(Signal::new(g, v), Err(ScatterError::Numeric(_))));
    }

    #[test]
    fn delta_reproduces_filter() {
        let grid = Grid::new_1d(32, 0.5).unwrap();
        let g = random_signal(grid, 3);
        let g_hat = g.fourier();
        let out = convolve(&Signal::delta(grid), &g_hat).unwrap();
        assert!(out.max_abs_diff(&g).unwrap() < 1e-12);
        let zero = convolve(&Signal::zeros(grid), &g_hat).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn spectral_matches_direct_sum() {
        for (grid, seed) in [
            (Grid::new_1d(32, 0.7).unwrap(), 1u64),
            (Grid::new_1d(64, 1.0).unwrap(), 2),
            (Grid::new_2d(16, 12, 0.3).unwrap(), 3),
        ] {
            let f = random_signal(grid, seed);
            let g = random_signal(grid, seed + 100);
            let fast = convolve(&f, &g.fourier()).unwrap();
            let slow = direct_convolution(&f, &g);
            assert!(rel_l2(&fast, &slow) <= 1e-10);
        }
    }

    #[test]
    fn convolution_rejects_grid_mismatch() {
        let a = Grid::new_1d(8, 1.0).unwrap();
        let b = Grid::new_1d(8, 0.5).unwrap();
        let err = convolve(&Signal::zeros(a), &Signal::zeros(b).fourier()).unwrap_err();
        assert!(matches!(err, ScatterError::Dimension(_)));
    }

    #[test]
    fn lq_norm_basics() {
        let grid = Grid::new_1d(16, 1.0 / 16.0).unwrap();
        let one = Signal::constant(grid, Complex64::new(1.0, 0.0));
        for q in [1.0, 1.5, 2.0, 3.7] {
            assert!((lq_norm(&one, q).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!(lq_norm(&one, 0.5).is_err());
        let f = random_signal(grid, 9);
        let direct: f64 = f
            .samples()
            .iter()
            .map(|z| (z.re * z.re + z.im * z.im).powf(0.75))
            .sum::<f64>();
        let oracle = (direct / 16.0).powf(1.0 / 1.5);
        assert!((lq_norm(&f, 1.5).unwrap() - oracle).abs() <= 1e-12 * oracle);
        let scaled = f.scale(Complex64::new(3.0, 0.0));
        assert!((lq_norm(&scaled, 2.0).unwrap() - 3.0 * lq_norm(&f, 2.0).unwrap()).abs() < 1e-12);
        assert_eq!(lq_norm(&Signal::zeros(grid), 1.3).unwrap(), 0.0);
    }

    #[test]
    fn contractions_on_constants() {
        let grid = Grid::new_1d(4, 1.0).unwrap();
        let m = apply_contraction(&Signal::constant(grid, Complex64::new(3.0, 4.0)), Contraction::Modulus);
        assert!(m.samples().iter().all(|z| *z == Complex64::new(5.0, 0.0)));
        let r = apply_contraction(
            &Signal::constant(grid, Complex64::new(-2.0, 7.0)),
            Contraction::ComplexRelu,
        );
        assert!(r.samples().iter().all(|z| *z == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn contraction_nonexpansive_on_random_pairs() {
        let grid = Grid::new_1d(32, 0.25).unwrap();
        for seed in 0..100 {
            let f = random_signal(grid, 2 * seed);
            let g = random_signal(grid, 2 * seed + 1);
            for kappa in [Contraction::Modulus, Contraction::ComplexRelu] {
                let d_out = apply_contraction(&f, kappa).sub(&apply_contraction(&g, kappa)).unwrap();
                let d_in = f.sub(&g).unwrap();
                for q in [1.0, 1.5, 2.0] {
                    assert!(lq_norm(&d_out, q).unwrap() <= lq_norm(&d_in, q).unwrap() * (1.0 + 1e-14));
                }
            }
        }
    }

    #[test]
    fn translation_identities() {
        let grid = Grid::new_2d(8, 12, 1.0).unwrap();
        let f = random_signal(grid, 4);
        assert_eq!(translate(&f, &[0, 0]).unwrap(), f);
        assert_eq!(translate(&f, &[8, 12]).unwrap(), f);
        let back = translate(&translate(&f, &[7, -7]).unwrap(), &[-7, 7]).unwrap();
        assert_eq!(back.max_abs_diff(&f).unwrap(), 0.0);
        let t = translate(&f, &[3, 5]).unwrap();
        // Same multiset of samples; only the summation order differs.
        let (a, b) = (lq_norm(&t, 1.5).unwrap(), lq_norm(&f, 1.5).unwrap());
        assert!((a - b).abs() <= 1e-14 * b);
        assert!(translate(&f, &[1]).is_err());
    }

    #[test]
    fn translate_commutes_with_convolution() {
        let grid = Grid::new_1d(64, 1.0).unwrap();
        let f = random_signal(grid, 5);
        let g_hat = random_signal(grid, 6).fourier();
        let a = translate(&convolve(&f, &g_hat).unwrap(), &[11]).unwrap();
        let b = convolve(&translate(&f, &[11]).unwrap(), &g_hat).unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }

    #[test]
    fn parseval_and_linearity() {
        let grid = Grid::new_2d(16, 16, 0.4).unwrap();
        let f = random_signal(grid, 7);
        let spatial = lq_norm_pow(&f, 2.0).unwrap();
        let n = grid.len() as f64;
        let spectral: f64 = f.fourier().values().iter().map(|z| z.norm_sqr()).sum::<f64>() / (n * grid.cell_volume());
        assert!((spatial - spectral).abs() <= 1e-10 * spatial);

        let g = random_signal(grid, 8);
        let k = random_signal(grid, 9).fourier();
        let (alpha, beta) = (Complex64::new(0.3, -1.1), Complex64::new(-2.0, 0.5));
        let lhs = convolve(&f.scale(alpha).add(&g.scale(beta)).unwrap(), &k).unwrap();
        let rhs = convolve(&f, &k)
            .unwrap()
            .scale(alpha)
            .add(&convolve(&g, &k).unwrap().scale(beta))
            .unwrap();
        assert!(rel_l2(&lhs, &rhs) <= 1e-12);
    }
}
