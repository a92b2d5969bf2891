mod common;

use lqscatter::signal::io::{decode_sigf, encode_sigf};
use lqscatter::signal::{apply_contraction, convolve, lq_norm, translate, Contraction, Grid, Signal, Spectrum};
use lqscatter::ScatterError;
use num_complex::Complex64;
use proptest::prelude::*;

fn signal_from(grid: Grid, parts: &[(f64, f64)]) -> Signal {
    Signal::new(grid, parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap()
}

fn samples(len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), len)
}

/// Independent `h^n sum |f|^q` oracle, accumulated in index order.
fn lq_oracle(f: &Signal, q: f64) -> f64 {
    let mut acc = 0.0;
    for z in f.samples() {
        acc += z.norm().powf(q);
    }
    (acc * f.grid().cell_volume()).powf(1.0 / q)
}

#[test]
fn delta_convolution_reproduces_the_filter() {
    let grid = Grid::new_2d(16, 12, 0.25).unwrap();
    let g = Signal::from_fn(grid, |x| Complex64::new((-x[0] * x[0] - 2.0 * x[1] * x[1]).exp(), x[0]));
    let out = convolve(&Signal::delta(grid), &g.fourier()).unwrap();
    assert!(out.max_abs_diff(&g).unwrap() < 1e-12);
}

#[test]
fn convolution_matches_direct_periodic_sum() {
    let grid = Grid::new_1d(16, 0.5).unwrap();
    let f = Signal::from_fn(grid, |x| Complex64::new(x[0].sin(), 0.3 * x[0]));
    let g = Signal::from_fn(grid, |x| Complex64::new((-x[0] * x[0]).exp(), x[0].cos()));
    let fast = convolve(&f, &g.fourier()).unwrap();
    let h = grid.cell_volume();
    for i in 0..16 {
        let direct: Complex64 = (0..16)
            .map(|k| f.samples()[k] * g.samples()[(i + 16 - k) % 16] * h)
            .sum();
        assert!((fast.samples()[i] - direct).norm() < 1e-12);
    }
}

#[test]
fn zero_signal_convolves_to_zero() {
    let grid = Grid::new_1d(32, 1.0).unwrap();
    let g = Spectrum::from_fn(grid, |w| Complex64::new(w[0].cos(), 0.0));
    assert_eq!(convolve(&Signal::zeros(grid), &g).unwrap().max_abs(), 0.0);
}

#[test]
fn convolution_rejects_mismatched_grids() {
    let a = Signal::zeros(Grid::new_1d(32, 1.0).unwrap());
    let b = Spectrum::from_fn(Grid::new_1d(16, 1.0).unwrap(), |_| Complex64::new(1.0, 0.0));
    assert!(matches!(convolve(&a, &b), Err(ScatterError::Dimension(_))));
}

#[test]
fn unit_mass_constant_has_unit_norm() {
    let grid = Grid::new_2d(8, 8, 0.125).unwrap();
    assert!((grid.cell_volume() * grid.len() as f64 - 1.0).abs() < 1e-15);
    let one = Signal::constant(grid, Complex64::new(1.0, 0.0));
    for q in [1.0, 1.5, 2.0, 3.7] {
        assert!((lq_norm(&one, q).unwrap() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn lq_norm_rejects_exponents_below_one() {
    let f = Signal::zeros(Grid::new_1d(8, 1.0).unwrap());
    assert!(matches!(lq_norm(&f, 0.5), Err(ScatterError::Domain(_))));
}

#[test]
fn contractions_on_constants() {
    let grid = Grid::new_1d(8, 1.0).unwrap();
    let m = apply_contraction(&Signal::constant(grid, Complex64::new(3.0, 4.0)), Contraction::Modulus);
    assert!(m.samples().iter().all(|z| *z == Complex64::new(5.0, 0.0)));
    let r = apply_contraction(
        &Signal::constant(grid, Complex64::new(-2.0, 7.0)),
        Contraction::ComplexRelu,
    );
    assert!(r.samples().iter().all(|z| *z == Complex64::new(0.0, 0.0)));
}

#[test]
fn translation_identities() {
    let grid = Grid::new_2d(10, 6, 1.0).unwrap();
    let f = Signal::from_fn(grid, |x| Complex64::new(x[0] * 0.3 - x[1], x[1] * x[0]));
    assert_eq!(translate(&f, &[0, 0]).unwrap(), f);
    assert_eq!(translate(&f, &[10, -6]).unwrap(), f);
    let back = translate(&translate(&f, &[7, 3]).unwrap(), &[-7, -3]).unwrap();
    assert_eq!(back.max_abs_diff(&f).unwrap(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lq_norm_matches_summation_oracle(parts in samples(16), q in 1.0..2.0f64) {
        let f = signal_from(Grid::new_1d(16, 0.3).unwrap(), &parts);
        let (a, b) = (lq_norm(&f, q).unwrap(), lq_oracle(&f, q));
        prop_assert!((a - b).abs() <= 1e-12 * b.max(1e-300));
    }

    #[test]
    fn lq_norm_is_absolutely_homogeneous(parts in samples(24), q in 1.0..2.0f64, c in -5.0..5.0f64) {
        let f = signal_from(Grid::new_1d(24, 1.0).unwrap(), &parts);
        let scaled = lq_norm(&f.scale(Complex64::new(c, 0.0)), q).unwrap();
        prop_assert!((scaled - c.abs() * lq_norm(&f, q).unwrap()).abs() <= 1e-12 * scaled.max(1.0));
    }

    #[test]
    fn convolution_is_bilinear(a in samples(32), b in samples(32), c in samples(32), s in -3.0..3.0f64) {
        let grid = Grid::new_1d(32, 0.5).unwrap();
        let (f, g, k) = (signal_from(grid, &a), signal_from(grid, &b), signal_from(grid, &c).fourier());
        let lhs = convolve(&f.add(&g.scale(Complex64::new(s, 0.0))).unwrap(), &k).unwrap();
        let rhs = convolve(&f, &k).unwrap().add(&convolve(&g, &k).unwrap().scale(Complex64::new(s, 0.0))).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-9 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn parseval_holds(parts in samples(48)) {
        let grid = Grid::new_2d(6, 8, 0.7).unwrap();
        let f = signal_from(grid, &parts);
        let spatial = lq_norm(&f, 2.0).unwrap().powi(2);
        let spectral: f64 = f.fourier().values().iter().map(|z| z.norm_sqr()).sum::<f64>()
            * (grid.cell_volume() * grid.len() as f64).recip();
        prop_assert!((spatial - spectral).abs() <= 1e-10 * spatial.max(1.0));
    }

    #[test]
    fn translation_commutes_with_convolution(parts in samples(64), k0 in -20i64..20, k1 in -20i64..20) {
        let grid = Grid::new_2d(8, 8, 1.0).unwrap();
        let f = signal_from(grid, &parts);
        let g = Spectrum::from_fn(grid, |w| Complex64::new((-w[0] * w[0] - w[1] * w[1]).exp(), w[1]));
        let a = translate(&convolve(&f, &g).unwrap(), &[k0, k1]).unwrap();
        let b = convolve(&translate(&f, &[k0, k1]).unwrap(), &g).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() <= 1e-12 * (1.0 + a.max_abs()));
    }

    #[test]
    fn contractions_are_pointwise_nonexpansive(a in (-1e3..1e3f64, -1e3..1e3f64), b in (-1e3..1e3f64, -1e3..1e3f64)) {
        let (za, zb) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        for kappa in [Contraction::Modulus, Contraction::ComplexRelu] {
            prop_assert!((kappa.apply(za) - kappa.apply(zb)).norm() <= (za - zb).norm() * (1.0 + 1e-15));
        }
    }

    #[test]
    fn sigf_round_trips_bit_exactly(parts in samples(20), spacing in 0.01..10.0f64) {
        let f = signal_from(Grid::new_2d(4, 5, spacing).unwrap(), &parts);
        prop_assert_eq!(decode_sigf(&encode_sigf(&f)).unwrap(), f);
    }
}
