use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Result, ScatterError};

/// Septic smooth step `t^4 (35 - 84 t + 70 t^2 - 20 t^3)`, clamped to
/// `[0, 1]`. It satisfies `nu(t) + nu(1 - t) = 1`, which is what makes the
/// Meyer-type windows below sum exactly to one.
pub fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else if t > 0.5 {
        // Evaluate through the symmetry so that it holds to rounding.
        1.0 - smooth_step(1.0 - t)
    } else {
        t.powi(4) * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)))
    }
}

/// Squared radial profile of the Meyer-type wavelet as a function of the
/// octave offset `u = log2(|w| / w_c)`. Integer translates sum to one.
pub fn meyer_profile(u: f64) -> f64 {
    if (-1.0..=0.0).contains(&u) {
        (0.5 * PI * smooth_step(u + 1.0)).sin().powi(2)
    } else if (0.0..=1.0).contains(&u) {
        (0.5 * PI * smooth_step(u)).cos().powi(2)
    } else {
        0.0
    }
}

/// Angular window `a(t)` on `|t| <= 1`; integer translates sum to one.
pub fn angular_profile(t: f64) -> f64 {
    let t = t.abs();
    if t >= 1.0 {
        0.0
    } else {
        (0.5 * PI * smooth_step(t)).cos().powi(2)
    }
}

/// Closed-form wavelet families.
#[derive(Debug, Clone, PartialEq)]
pub enum WaveletFamily {
    /// Gaussian-windowed plane wave along axis 0; `zero_mean` subtracts the
    /// Gaussian correction that cancels the DC response.
    Morlet { xi: f64, sigma: f64, zero_mean: bool },
    /// 1D Morlet restricted to positive frequencies.
    AnalyticMorlet { xi: f64, sigma: f64 },
    /// Negative Laplacian of a Gaussian.
    MexicanHat { sigma: f64 },
    /// `order`-th derivative of a unit-mass Gaussian along axis 0.
    GaussianDerivative { order: u32, sigma: f64 },
    /// Frequency-domain bump whose dyadic squared dilates sum to one.
    /// With `orientations > 1` (2D only) an angular window of width
    /// `2 pi / orientations` is applied whose rotated squares also sum to
    /// `orientations`.
    Meyer {
        omega_c: f64,
        amplitude: f64,
        orientations: usize,
    },
    /// `(1-c)^-n psi(x / (1-c)) - psi(x)`, whose transform is
    /// `psi^((1-c) w) - psi^(w)`.
    Difference { base: Box<MotherWavelet>, c: f64 },
}

/// A mother wavelet on `R^n`, `n` in {1, 2}.
#[derive(Debug, Clone, PartialEq)]
pub struct MotherWavelet {
    n_dims: usize,
    family: WaveletFamily,
}

fn check_dims(n: usize) -> Result<()> {
    if n == 1 || n == 2 {
        Ok(())
    } else {
        Err(ScatterError::Dimension(format!(
            "wavelets live in 1 or 2 dimensions, got {n}"
        )))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ScatterError::Domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

/// Probabilists' Hermite polynomial `He_k(x)`.
fn hermite(k: u32, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if k == 0 {
        return a;
    }
    for j in 1..k {
        let next = x * b - j as f64 * a;
        a = b;
        b = next;
    }
    b
}

#[inline]
fn norm2(v: [f64; 2]) -> f64 {
    v[0] * v[0] + v[1] * v[1]
}

impl MotherWavelet {
    fn new(n_dims: usize, family: WaveletFamily) -> Result<Self> {
        check_dims(n_dims)?;
        Ok(MotherWavelet { n_dims, family })
    }

    /// Zero-mean Morlet with `xi = 5`, `sigma = 1`.
    pub fn morlet(n_dims: usize) -> Result<Self> {
        Self::morlet_with(n_dims, 5.0, 1.0, true)
    }

    pub fn morlet_with(n_dims: usize, xi: f64, sigma: f64, zero_mean: bool) -> Result<Self> {
        check_positive("xi", xi)?;
        check_positive("sigma", sigma)?;
        Self::new(n_dims, WaveletFamily::Morlet { xi, sigma, zero_mean })
    }

    pub fn analytic_morlet(xi: f64, sigma: f64) -> Result<Self> {
        check_positive("xi", xi)?;
        check_positive("sigma", sigma)?;
        Self::new(1, WaveletFamily::AnalyticMorlet { xi, sigma })
    }

    pub fn mexican_hat(n_dims: usize, sigma: f64) -> Result<Self> {
        check_positive("sigma", sigma)?;
        Self::new(n_dims, WaveletFamily::MexicanHat { sigma })
    }

    pub fn gaussian_derivative(n_dims: usize, order: u32, sigma: f64) -> Result<Self> {
        check_positive("sigma", sigma)?;
        if order == 0 {
            return Err(ScatterError::Domain("derivative order must be at least 1".into()));
        }
        Self::new(n_dims, WaveletFamily::GaussianDerivative { order, sigma })
    }

    /// Meyer-type wavelet for dyadic banks: `sum_j |psi^(2^j w)|^2 = 1`.
    pub fn meyer(n_dims: usize, omega_c: f64) -> Result<Self> {
        check_positive("omega_c", omega_c)?;
        Self::new(
            n_dims,
            WaveletFamily::Meyer {
                omega_c,
                amplitude: 1.0,
                orientations: 1,
            },
        )
    }

    /// Meyer-type wavelet scaled so that `int |psi^(l w)|^2 dl / l = 1`.
    pub fn meyer_continuous(n_dims: usize, omega_c: f64) -> Result<Self> {
        check_positive("omega_c", omega_c)?;
        Self::new(
            n_dims,
            WaveletFamily::Meyer {
                omega_c,
                amplitude: 1.0 / LN_2.sqrt(),
                orientations: 1,
            },
        )
    }

    /// 2D Meyer-type wavelet with an angular window for a bank of
    /// `orientations` equally spaced rotations.
    pub fn meyer_oriented(omega_c: f64, orientations: usize, continuous: bool) -> Result<Self> {
        check_positive("omega_c", omega_c)?;
        if orientations == 0 {
            return Err(ScatterError::Domain("orientation count must be positive".into()));
        }
        let amplitude = if continuous { 1.0 / LN_2.sqrt() } else { 1.0 };
        Self::new(
            2,
            WaveletFamily::Meyer {
                omega_c,
                amplitude,
                orientations,
            },
        )
    }

    /// The difference wavelet for a dilation by `1 - c`; requires
    /// `|c| < 1/(2n)`.
    pub fn difference(base: &MotherWavelet, c: f64) -> Result<Self> {
        let limit = 1.0 / (2.0 * base.n_dims as f64);
        if c.is_nan() || c.abs() >= limit {
            return Err(ScatterError::Domain(format!(
                "dilation parameter must satisfy |c| < {limit}, got {c}"
            )));
        }
        Self::new(
            base.n_dims,
            WaveletFamily::Difference {
                base: Box::new(base.clone()),
                c,
            },
        )
    }

    /// Build a wavelet from a name and parameter map, as used by
    /// configuration files. Unknown parameters are rejected.
    pub fn from_name(name: &str, n_dims: usize, params: &BTreeMap<String, f64>) -> Result<Self> {
        let allowed: &[&str] = match name {
            "morlet" | "morlet-uncorrected" => &["xi", "sigma"],
            "analytic-morlet" => &["xi", "sigma"],
            "mexican-hat" => &["sigma"],
            "gaussian-derivative" => &["order", "sigma"],
            "meyer" | "meyer-continuous" => &["omega_c", "orientations"],
            _ => return Err(ScatterError::Config(format!("unknown wavelet '{name}'"))),
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(ScatterError::Config(format!("wavelet '{name}' has no parameter '{k}'")));
        }
        let get = |k: &str, default: f64| params.get(k).copied().unwrap_or(default);
        match name {
            "morlet" => Self::morlet_with(n_dims, get("xi", 5.0), get("sigma", 1.0), true),
            "morlet-uncorrected" => Self::morlet_with(n_dims, get("xi", 5.0), get("sigma", 1.0), false),
            "analytic-morlet" => {
                if n_dims != 1 {
                    return Err(ScatterError::Config("analytic-morlet is one-dimensional".into()));
                }
                Self::analytic_morlet(get("xi", 5.0), get("sigma", 1.0))
            }
            "mexican-hat" => Self::mexican_hat(n_dims, get("sigma", 1.0)),
            "gaussian-derivative" => {
                let order = get("order", 4.0);
                if order.fract() != 0.0 || order < 1.0 {
                    return Err(ScatterError::Config(format!(
                        "order must be a positive integer, got {order}"
                    )));
                }
                Self::gaussian_derivative(n_dims, order as u32, get("sigma", 1.0))
            }
            _ => {
                let continuous = name == "meyer-continuous";
                let omega_c = get("omega_c", PI / 2.0);
                let orientations = get("orientations", 1.0);
                if orientations.fract() != 0.0 || orientations < 1.0 {
                    return Err(ScatterError::Config(format!(
                        "orientations must be a positive integer, got {orientations}"
                    )));
                }
                if orientations > 1.0 {
                    if n_dims != 2 {
                        return Err(ScatterError::Config("oriented meyer needs a 2D grid".into()));
                    }
                    Self::meyer_oriented(omega_c, orientations as usize, continuous)
                } else if continuous {
                    Self::meyer_continuous(n_dims, omega_c)
                } else {
                    Self::meyer(n_dims, omega_c)
                }
            }
        }
    }

    #[inline]
    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    pub fn family(&self) -> &WaveletFamily {
        &self.family
    }

    pub fn name(&self) -> String {
        match &self.family {
            WaveletFamily::Morlet { zero_mean: true, .. } => "morlet".into(),
            WaveletFamily::Morlet { zero_mean: false, .. } => "morlet-uncorrected".into(),
            WaveletFamily::AnalyticMorlet { .. } => "analytic-morlet".into(),
            WaveletFamily::MexicanHat { .. } => "mexican-hat".into(),
            WaveletFamily::GaussianDerivative { order, .. } => format!("gaussian-derivative-{order}"),
            WaveletFamily::Meyer { orientations: 1, .. } => "meyer".into(),
            WaveletFamily::Meyer { orientations, .. } => format!("meyer-{orientations}"),
            WaveletFamily::Difference { base, c } => format!("difference({}, c={c})", base.name()),
        }
    }

    /// True when `psi` is real-valued.
    pub fn is_real(&self) -> bool {
        match &self.family {
            WaveletFamily::Morlet { .. } | WaveletFamily::AnalyticMorlet { .. } => false,
            WaveletFamily::MexicanHat { .. } | WaveletFamily::GaussianDerivative { .. } => true,
            WaveletFamily::Meyer { orientations, .. } => *orientations == 1,
            WaveletFamily::Difference { base, .. } => base.is_real(),
        }
    }

    /// True for 1D wavelets whose transform vanishes for `w <= 0`.
    pub fn is_complex_analytic(&self) -> bool {
        match &self.family {
            WaveletFamily::AnalyticMorlet { .. } => true,
            WaveletFamily::Difference { base, .. } => base.is_complex_analytic(),
            _ => false,
        }
    }

    /// Number of vanishing moments; `None` means all moments vanish (the
    /// transform is identically zero near the origin).
    pub fn vanishing_moments(&self) -> Option<u32> {
        match &self.family {
            WaveletFamily::Morlet { zero_mean, .. } => Some(u32::from(*zero_mean)),
            WaveletFamily::AnalyticMorlet { .. } => Some(1),
            WaveletFamily::MexicanHat { .. } => Some(2),
            WaveletFamily::GaussianDerivative { order, .. } => Some(*order),
            WaveletFamily::Meyer { .. } => None,
            WaveletFamily::Difference { base, .. } => base.vanishing_moments(),
        }
    }

    /// Radius (along axis 0) at which `|psi^|` is largest.
    pub fn peak_frequency(&self) -> f64 {
        match &self.family {
            WaveletFamily::Morlet { xi, .. } | WaveletFamily::AnalyticMorlet { xi, .. } => *xi,
            WaveletFamily::MexicanHat { sigma } => 2f64.sqrt() / sigma,
            WaveletFamily::GaussianDerivative { order, sigma } => (*order as f64).sqrt() / sigma,
            WaveletFamily::Meyer { omega_c, .. } => *omega_c,
            WaveletFamily::Difference { base, .. } => base.peak_frequency(),
        }
    }

    /// Closed-form Fourier transform `psi^(w) = int psi(x) e^{-i x.w} dx`.
    pub fn fourier(&self, w: [f64; 2]) -> Complex64 {
        let w = if self.n_dims == 1 { [w[0], 0.0] } else { w };
        match &self.family {
            WaveletFamily::Morlet { xi, sigma, zero_mean } => {
                let s2 = sigma * sigma;
                let shifted = norm2([w[0] - xi, w[1]]);
                let kappa = if *zero_mean { (-0.5 * xi * xi * s2).exp() } else { 0.0 };
                Complex64::new((-0.5 * s2 * shifted).exp() - kappa * (-0.5 * s2 * norm2(w)).exp(), 0.0)
            }
            WaveletFamily::AnalyticMorlet { xi, sigma } => {
                if w[0] <= 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let s2 = sigma * sigma;
                let kappa = (-0.5 * xi * xi * s2).exp();
                Complex64::new(
                    (-0.5 * s2 * (w[0] - xi).powi(2)).exp() - kappa * (-0.5 * s2 * w[0] * w[0]).exp(),
                    0.0,
                )
            }
            WaveletFamily::MexicanHat { sigma } => {
                let r2 = norm2(w);
                let n = self.n_dims as i32;
                let c = (2.0 * PI).powf(self.n_dims as f64 / 2.0) * sigma.powi(n);
                Complex64::new(c * r2 * (-0.5 * sigma * sigma * r2).exp(), 0.0)
            }
            WaveletFamily::GaussianDerivative { order, sigma } => {
                let g = (-0.5 * sigma * sigma * norm2(w)).exp();
                Complex64::new(0.0, w[0]).powu(*order) * g
            }
            WaveletFamily::Meyer {
                omega_c,
                amplitude,
                orientations,
            } => {
                let r = norm2(w).sqrt();
                if r == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let radial = meyer_profile((r / omega_c).log2()).sqrt();
                let angular = if *orientations > 1 {
                    let n = *orientations as f64;
                    let theta = w[1].atan2(w[0]);
                    (n * angular_profile(theta / (2.0 * PI / n))).sqrt()
                } else {
                    1.0
                };
                Complex64::new(amplitude * radial * angular, 0.0)
            }
            WaveletFamily::Difference { base, c } => {
                let s = 1.0 - c;
                base.fourier([s * w[0], s * w[1]]) - base.fourier(w)
            }
        }
    }

    /// Closed-form spatial evaluator, when one exists.
    pub fn spatial(&self, x: [f64; 2]) -> Option<Complex64> {
        let x = if self.n_dims == 1 { [x[0], 0.0] } else { x };
        let n = self.n_dims as f64;
        match &self.family {
            WaveletFamily::Morlet { xi, sigma, zero_mean } => {
                let s2 = sigma * sigma;
                let kappa = if *zero_mean { (-0.5 * xi * xi * s2).exp() } else { 0.0 };
                let env = (2.0 * PI * s2).powf(-n / 2.0) * (-0.5 * norm2(x) / s2).exp();
                Some((Complex64::from_polar(1.0, xi * x[0]) - kappa) * env)
            }
            WaveletFamily::MexicanHat { sigma } => {
                let s2 = sigma * sigma;
                let r2 = norm2(x);
                Some(Complex64::new((n / s2 - r2 / (s2 * s2)) * (-0.5 * r2 / s2).exp(), 0.0))
            }
            WaveletFamily::GaussianDerivative { order, sigma } => {
                let s2 = sigma * sigma;
                let g = (2.0 * PI * s2).powf(-n / 2.0) * (-0.5 * norm2(x) / s2).exp();
                let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
                let v = sign * sigma.powi(-(*order as i32)) * hermite(*order, x[0] / sigma) * g;
                Some(Complex64::new(v, 0.0))
            }
            WaveletFamily::AnalyticMorlet { .. } | WaveletFamily::Meyer { .. } => None,
            WaveletFamily::Difference { base, c } => {
                let s = 1.0 - c;
                let scaled = base.spatial([x[0] / s, x[1] / s])?;
                Some(scaled * s.powf(-n) - base.spatial(x)?)
            }
        }
    }

    pub fn has_spatial(&self) -> bool {
        self.spatial([0.0, 0.0]).is_some()
    }
}
