//! The subcommands. Each takes a resolved [`RunConfig`] and returns whether
//! its checks passed; errors carry their own exit codes.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use lqscatter::deform::{stability_experiment, DeformationFamily, StabilityConfig, StabilityReport};
use lqscatter::harmonic::{hardy_norm, HardyNormReport};
use lqscatter::rotation::{
    equivariance_check, equivariant_scatter, invariance_check, invariant_scatter, RotationCheck, RotationGrid,
};
use lqscatter::scattering::io::{decode_sctr, encode_sctr, from_json, to_json};
use lqscatter::scattering::{scatter, scattering_norm, ScatteringCoefficients};
use lqscatter::signal::io::decode_sigf;
use lqscatter::signal::{lq_norm_pow, Grid, Signal};
use lqscatter::synth::{band_limited_noise, gaussian_bump, localized_noise, plane_wave};
use lqscatter::wavelet::admissibility::{
    check_admissibility_continuous, check_admissibility_dyadic, fit_decay, log_spaced_frequencies, vanishing_moments,
    AdmissibilityReport, DecayFit, MomentReport,
};
use lqscatter::wavelet::{build_bank, FilterBank, MotherWavelet, ScaleGrid, ScaleKind, WaveletFamily};
use lqscatter::ScatterError;

use crate::config::{FamilyName, LatticeName, OutputFormat, RunConfig, SignalSource, SynthKind, SynthSpec};
use crate::{write_atomic, CliError};

/// Largest `|psi^(0)| / max |psi^|` accepted as zero average.
pub const ZERO_AVERAGE_LIMIT: f64 = 1e-8;
/// Largest relative spread of a Littlewood-Paley partition.
pub const PARTITION_FLATNESS_LIMIT: f64 = 1e-8;
/// Largest relative moment accepted as vanishing.
pub const MOMENT_LIMIT: f64 = 1e-8;
/// Relative slack on the frame bounds in the norm-equivalence check.
pub const FRAME_SLACK: f64 = 1e-6;
/// Frequency samples per octave-spanning admissibility sweep.
pub const ADMISSIBILITY_SAMPLES: usize = 400;
/// Directions sampled by 2D admissibility sweeps.
pub const ADMISSIBILITY_DIRECTIONS: usize = 8;

pub fn load_signal(source: &SignalSource) -> Result<Signal, CliError> {
    match source {
        SignalSource::File(path) => {
            let bytes = read_file(path)?;
            decode_sigf(&bytes).map_err(|e| match e {
                ScatterError::Numeric(m) => CliError::Numeric(format!("{}: {m}", path.display())),
                e => CliError::Io(format!("{}: {e}", path.display())),
            })
        }
        SignalSource::Synthetic(spec) => synthesize(spec),
    }
}

pub fn synthesize(spec: &SynthSpec) -> Result<Signal, CliError> {
    let grid = match spec.dims {
        1 => Grid::new_1d(spec.size, spec.spacing)?,
        _ => Grid::new_2d(spec.size, spec.size, spec.spacing)?,
    };
    let low = spec.band_low.unwrap_or(0.5 * grid.fundamental());
    let high = spec.band_high.unwrap_or(0.8 * grid.nyquist());
    let width = spec.width.unwrap_or(grid.period(0) / 8.0);
    Ok(match spec.kind {
        SynthKind::Noise => band_limited_noise(grid, low, high, spec.seed),
        SynthKind::Localized => localized_noise(grid, low, high, width, spec.seed),
        SynthKind::Bump => gaussian_bump(grid, width),
        SynthKind::PlaneWave => plane_wave(grid, [spec.cycles, spec.cycles]),
        SynthKind::Zeros => Signal::zeros(grid),
    })
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

pub fn mother_wavelet(cfg: &RunConfig, n_dims: usize) -> Result<MotherWavelet, CliError> {
    Ok(MotherWavelet::from_name(&cfg.bank.wavelet, n_dims, &cfg.bank.params)?)
}

pub fn scale_grid(cfg: &RunConfig, grid: &Grid) -> Result<ScaleGrid, CliError> {
    let period = (0..grid.n_dims()).map(|a| grid.period(a)).fold(f64::INFINITY, f64::min);
    Ok(ScaleGrid::from_mode(cfg.bank.scale_mode(grid.spacing(), period))?)
}

fn rotation_grid(cfg: &RunConfig) -> Result<Option<RotationGrid>, CliError> {
    cfg.bank
        .angles
        .map(RotationGrid::new)
        .transpose()
        .map_err(CliError::from)
}

/// The filter bank described by `cfg` on `grid`.
pub fn bank_for(cfg: &RunConfig, grid: &Grid) -> Result<FilterBank, CliError> {
    let psi = mother_wavelet(cfg, grid.n_dims())?;
    Ok(build_bank(
        &psi,
        *grid,
        scale_grid(cfg, grid)?,
        cfg.bank.normalization,
        rotation_grid(cfg)?,
    )?)
}

fn ensure_finite(values: &[f64], what: &str) -> Result<(), CliError> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(CliError::Numeric(format!("{what} {i} is {}", values[i]))),
        None => Ok(()),
    }
}

fn to_json_text<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Numeric(format!("cannot serialize the report: {e}")))
}

/// Format for `path`: explicit choice first, then the file extension.
fn output_format(cfg: &RunConfig, path: &Path) -> OutputFormat {
    cfg.format
        .unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
            Some("json") => OutputFormat::Json,
            Some("csv") => OutputFormat::Csv,
            _ => OutputFormat::Binary,
        })
}

/// Scatter the input and write the coefficients.
pub fn cmd_scatter(cfg: &RunConfig) -> Result<bool, CliError> {
    let f = load_signal(&cfg.source)?;
    let bank = bank_for(cfg, f.grid())?;
    let coeffs = match (bank.rotations(), cfg.lattice) {
        (None, _) => scatter(&f, &bank, cfg.m, cfg.q, cfg.kappa)?,
        (Some(_), LatticeName::Equivariant) => equivariant_scatter(&f, &bank, cfg.m, cfg.q, cfg.kappa)?,
        (Some(_), LatticeName::Invariant) => invariant_scatter(&f, &bank, cfg.m, cfg.q, cfg.kappa)?,
    };
    ensure_finite(coeffs.values(), "coefficient")?;
    let norm = scattering_norm(&coeffs);
    ensure_finite(&[norm], "scattering norm")?;
    if let Some(path) = &cfg.output {
        let bytes = match output_format(cfg, path) {
            OutputFormat::Binary => encode_sctr(&coeffs),
            OutputFormat::Json => to_json(&coeffs)?.into_bytes(),
            OutputFormat::Csv => coefficients_csv(&coeffs)?.into_bytes(),
        };
        write_atomic(path, &bytes)?;
    }
    println!("coefficients: {}", coeffs.len());
    println!("norm: {norm}");
    Ok(true)
}

/// One `label,value,weight` row per path.
pub fn coefficients_csv(s: &ScatteringCoefficients) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["path", "value", "weight"]).map_err(io)?;
    for (path, value, weight) in s.iter() {
        w.write_record([path.label(s.lattice()), value.to_string(), weight.to_string()])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// One row of the wavelet report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: Option<f64>,
    /// Informational rows always pass and do not affect the verdict.
    pub required: bool,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveletReport {
    pub wavelet: String,
    pub mode: String,
    pub scales: Vec<f64>,
    pub checks: Vec<Check>,
    pub admissibility: Option<AdmissibilityReport>,
    pub decay: Option<DecayFit>,
    pub moments: Vec<MomentReport>,
    /// `||S^1_{q=2} f|| / ||f||_2^2` and the frame bounds on the support of `f^`.
    pub norm_ratio: Option<f64>,
    pub frame_bounds: Option<[f64; 2]>,
    pub passed: bool,
}

/// Frequencies covering the band the scale grid resolves: from the peak
/// frequency of the coarsest filter to that of the finest. Continuous
/// grids integrate over whole filters only an octave inside either end, so
/// their band is narrowed by an octave on each side when it is wide enough.
pub fn admissibility_frequencies(psi: &MotherWavelet, scales: &ScaleGrid) -> Vec<[f64; 2]> {
    let s = scales.scales();
    let peak = psi.peak_frequency();
    let (mut lo, mut hi) = (peak / s[s.len() - 1], peak / s[0]);
    if scales.kind() == ScaleKind::Continuous && hi / lo > 4.0 {
        (lo, hi) = (2.0 * lo, hi / 2.0);
    }
    log_spaced_frequencies(lo, hi, ADMISSIBILITY_SAMPLES, psi.n_dims(), ADMISSIBILITY_DIRECTIONS)
}

/// Fine grid on which spatial properties of the mother wavelet (decay,
/// moments) are measured: `sigma / 20` spacing over a `51 sigma` cell in
/// 1D, `sigma / 4` over `32 sigma` in 2D, where `sigma` is the wavelet's
/// width parameter.
pub fn wavelet_grid(cfg: &RunConfig, n_dims: usize) -> Result<Grid, CliError> {
    let sigma = cfg.bank.params.get("sigma").copied().unwrap_or(1.0);
    Ok(match n_dims {
        1 => Grid::new_1d(1024, 0.05 * sigma)?,
        _ => Grid::new_2d(128, 128, 0.25 * sigma)?,
    })
}

/// `|psi^(0)|` relative to the largest response over a wide sweep.
pub fn zero_average_ratio(psi: &MotherWavelet) -> f64 {
    let peak = psi.peak_frequency();
    let sweep = log_spaced_frequencies(peak * 1e-3, peak * 1e3, 2000, psi.n_dims(), ADMISSIBILITY_DIRECTIONS);
    let top = sweep.iter().map(|&w| psi.fourier(w).norm()).fold(0.0, f64::max);
    if top > 0.0 {
        psi.fourier([0.0, 0.0]).norm() / top
    } else {
        f64::INFINITY
    }
}

fn check(name: &str, value: f64, limit: Option<f64>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        value,
        limit,
        required: true,
        pass,
        detail: detail.into(),
    }
}

fn info(name: &str, value: f64, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        value,
        limit: None,
        required: false,
        pass: true,
        detail: detail.into(),
    }
}

/// Admissibility, zero average, decay, moments and norm equivalence of the
/// configured wavelet on the grid of the input signal.
pub fn wavelet_report(cfg: &RunConfig) -> Result<WaveletReport, CliError> {
    let f = load_signal(&cfg.source)?;
    let grid = *f.grid();
    let psi = mother_wavelet(cfg, grid.n_dims())?;
    let scales = scale_grid(cfg, &grid)?;
    let mut checks = Vec::new();

    let zero = zero_average_ratio(&psi);
    checks.push(check(
        "zero average",
        zero,
        Some(ZERO_AVERAGE_LIMIT),
        zero <= ZERO_AVERAGE_LIMIT,
        "|psi^(0)| / max |psi^|",
    ));

    let omegas = admissibility_frequencies(&psi, &scales);
    let admissibility = match scales.kind() {
        ScaleKind::Dyadic => check_admissibility_dyadic(&psi, &omegas, &scales)?,
        ScaleKind::Continuous => check_admissibility_continuous(&psi, &omegas, &scales)?,
    };
    checks.push(check(
        "admissibility lower bound",
        admissibility.min,
        None,
        admissibility.mean > 0.0 && admissibility.min > 0.0,
        format!(
            "profile in [{:e}, {:e}], mean {:e}",
            admissibility.min, admissibility.max, admissibility.mean
        ),
    ));
    let flatness = admissibility.flatness();
    let partition = matches!(psi.family(), WaveletFamily::Meyer { .. });
    checks.push(if partition {
        check(
            "partition flatness",
            flatness,
            Some(PARTITION_FLATNESS_LIMIT),
            flatness <= PARTITION_FLATNESS_LIMIT,
            "(max - min) / mean of the profile",
        )
    } else {
        info("partition flatness", flatness, "not a partition of unity")
    });

    let fine = wavelet_grid(cfg, grid.n_dims())?;
    let decay = if psi.has_spatial() {
        match fit_decay(&psi, &fine) {
            Ok(fit) => {
                // Gaussian tails fit any exponent; only positivity is asserted.
                checks.push(check(
                    "decay exponent",
                    fit.epsilon,
                    None,
                    fit.epsilon > 0.0,
                    format!(
                        "|psi(x)| <= {:e} (1 + |x|)^-(n + {:.3}) over {} samples",
                        fit.amplitude, fit.epsilon, fit.points
                    ),
                ));
                Some(fit)
            }
            Err(e) => {
                checks.push(check("decay exponent", f64::NAN, None, false, e.to_string()));
                None
            }
        }
    } else {
        None
    };

    let moments = match psi.vanishing_moments() {
        Some(order) if order > 0 && psi.has_spatial() => {
            let reports = vanishing_moments(&psi, &fine)?;
            let worst = reports.iter().map(MomentReport::relative).fold(0.0, f64::max);
            checks.push(check(
                "vanishing moments",
                worst,
                Some(MOMENT_LIMIT),
                worst <= MOMENT_LIMIT,
                format!("{} moments of total degree below {order}", reports.len()),
            ));
            reports
        }
        _ => Vec::new(),
    };

    let (mut norm_ratio, mut frame_bounds) = (None, None);
    match build_bank(&psi, grid, scales.clone(), cfg.bank.normalization, rotation_grid(cfg)?) {
        Ok(bank) => {
            let dc = bank
                .filters()
                .iter()
                .map(|s| s.dc().norm() / s.peak())
                .fold(0.0, f64::max);
            checks.push(check(
                "bank zero average",
                dc,
                Some(ZERO_AVERAGE_LIMIT),
                dc <= ZERO_AVERAGE_LIMIT,
                "max |psi_j^(0)| / max |psi_j^|",
            ));
            let energy = lq_norm_pow(&f, 2.0)?;
            if energy > 0.0 {
                let (ratio, bounds) = norm_equivalence(&f, &bank, energy)?;
                let pass = ratio >= bounds[0] * (1.0 - FRAME_SLACK) && ratio <= bounds[1] * (1.0 + FRAME_SLACK);
                checks.push(check(
                    "norm equivalence",
                    ratio,
                    None,
                    pass,
                    format!(
                        "||S^1 f|| / ||f||^2 within frame bounds [{:e}, {:e}]",
                        bounds[0], bounds[1]
                    ),
                ));
                norm_ratio = Some(ratio);
                frame_bounds = Some(bounds);
            }
        }
        Err(e) => checks.push(check("bank construction", f64::NAN, None, false, e.to_string())),
    }

    let passed = checks.iter().all(|c| c.pass);
    Ok(WaveletReport {
        wavelet: psi.name(),
        mode: format!("{:?}", scales.kind()).to_lowercase(),
        scales: scales.scales().to_vec(),
        checks,
        admissibility: Some(admissibility),
        decay,
        moments,
        norm_ratio,
        frame_bounds,
        passed,
    })
}

/// `||S^1_{q=2} f|| / ||f||^2` and the smallest and largest value of the
/// weighted filter profile over the frequencies where `f^` is nonzero.
pub fn norm_equivalence(f: &Signal, bank: &FilterBank, energy: f64) -> Result<(f64, [f64; 2]), CliError> {
    let s1 = scatter(f, bank, 1, 2.0, Default::default())?;
    let ratio = scattering_norm(&s1) / energy;
    let spectrum = f.fourier();
    let power: Vec<f64> = spectrum.values().iter().map(|z| z.norm_sqr()).collect();
    let floor = power.iter().copied().fold(0.0, f64::max) * 1e-24;
    let mut bounds = [f64::INFINITY, 0.0f64];
    for (k, &p) in power.iter().enumerate() {
        if p <= floor {
            continue;
        }
        let profile: f64 = bank
            .filters()
            .iter()
            .zip(s1.weights())
            .map(|(h, w)| w * h.values()[k].norm_sqr())
            .sum();
        bounds = [bounds[0].min(profile), bounds[1].max(profile)];
    }
    Ok((ratio, bounds))
}

pub fn render_wavelet_report(r: &WaveletReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "wavelet {} ({} scales, {} of them)",
        r.wavelet,
        r.mode,
        r.scales.len()
    );
    let _ = writeln!(out, "{:<26} {:>12} {:>10}  status", "check", "value", "limit");
    for c in &r.checks {
        let limit = c.limit.map_or_else(|| "-".to_string(), |l| format!("{l:.0e}"));
        let status = match (c.required, c.pass) {
            (false, _) => "info",
            (true, true) => "PASS",
            (true, false) => "FAIL",
        };
        let _ = writeln!(
            out,
            "{:<26} {:>12.4e} {:>10}  {status}  {}",
            c.name, c.value, limit, c.detail
        );
    }
    let _ = writeln!(
        out,
        "{}",
        if r.passed {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );
    out
}

pub fn cmd_check_wavelet(cfg: &RunConfig) -> Result<bool, CliError> {
    let report = wavelet_report(cfg)?;
    emit_report(cfg, &report, render_wavelet_report(&report))?;
    Ok(report.passed)
}

/// Print a report as text or JSON, and write it to the output file if one
/// was given.
fn emit_report<T: Serialize>(cfg: &RunConfig, report: &T, text: String) -> Result<(), CliError> {
    let body = match cfg.format {
        Some(OutputFormat::Json) => to_json_text(report)?,
        _ => text,
    };
    match &cfg.output {
        Some(path) => write_atomic(path, body.as_bytes()),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// The deformation family described by `cfg`.
pub fn family(cfg: &RunConfig) -> DeformationFamily {
    let st = &cfg.stability;
    match st.family.unwrap_or(FamilyName::Dilation) {
        FamilyName::Dilation => DeformationFamily::Dilation {
            params: st
                .params
                .clone()
                .unwrap_or_else(|| vec![1.0 / 256.0, 1.0 / 128.0, 1.0 / 64.0]),
        },
        FamilyName::SinusoidalWarp => DeformationFamily::SinusoidalWarp {
            params: st.params.clone().unwrap_or_else(|| vec![0.25, 0.5, 1.0]),
            amplitude: st.amplitude.unwrap_or(2.0),
            cycles: st.cycles.unwrap_or(1),
        },
    }
}

pub fn stability_report(cfg: &RunConfig) -> Result<StabilityReport, CliError> {
    let f = load_signal(&cfg.source)?;
    let bank = bank_for(cfg, f.grid())?;
    let mut sc = StabilityConfig::new(cfg.m, cfg.q);
    sc.kappa = cfg.kappa;
    if let Some(band) = cfg.stability.band {
        sc.band_factor = band;
    }
    let report = stability_experiment(&f, &bank, &sc, &family(cfg))?;
    for row in &report.rows {
        ensure_finite(&[row.distance, row.input_term], "stability row")?;
    }
    Ok(report)
}

pub fn cmd_stability(cfg: &RunConfig) -> Result<bool, CliError> {
    let report = stability_report(cfg)?;
    let body = match cfg.format {
        Some(OutputFormat::Json) => to_json_text(&report)?,
        _ => report.to_csv()?,
    };
    let band = report
        .ratio_band()
        .map_or_else(|| "undefined".to_string(), |b| format!("{b:.4}"));
    let verdict = if report.passes() { "PASS" } else { "FAIL" };
    match &cfg.output {
        Some(path) => {
            write_atomic(path, body.as_bytes())?;
            println!(
                "{} sweep, {} rows, ratio band {band} (limit {}): {verdict}",
                report.family,
                report.rows.len(),
                report.band_factor
            );
        }
        None => print!("{body}"),
    }
    Ok(report.passes())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivarianceReport {
    pub angles: usize,
    pub theta_degrees: f64,
    pub tolerance: f64,
    pub equivariance: RotationCheck,
    pub invariance: RotationCheck,
    pub passed: bool,
}

pub fn equivariance_report(cfg: &RunConfig) -> Result<EquivarianceReport, CliError> {
    let angles = cfg
        .bank
        .angles
        .ok_or_else(|| CliError::Config("equivariance needs --angles".into()))?;
    let f = load_signal(&cfg.source)?;
    let bank = bank_for(cfg, f.grid())?;
    let theta_degrees = cfg.equivariance.theta.unwrap_or(360.0 / angles as f64);
    let theta = theta_degrees.to_radians();
    let quarter = (theta_degrees / 90.0).fract() == 0.0;
    let tolerance = cfg.equivariance.tolerance.unwrap_or(if quarter { 1e-10 } else { 1e-2 });
    let equivariance = equivariance_check(&f, &bank, theta, cfg.m, cfg.q, cfg.kappa)?;
    let invariance = invariance_check(&f, &bank, theta, cfg.m, cfg.q, cfg.kappa)?;
    ensure_finite(&[equivariance.max_rel, invariance.max_rel], "rotation error")?;
    let passed = equivariance.max_rel <= tolerance && invariance.max_rel <= tolerance;
    Ok(EquivarianceReport {
        angles,
        theta_degrees,
        tolerance,
        equivariance,
        invariance,
        passed,
    })
}

pub fn cmd_equivariance(cfg: &RunConfig) -> Result<bool, CliError> {
    let r = equivariance_report(cfg)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "rotation by {} degrees on a {}-angle grid",
        r.theta_degrees, r.angles
    );
    for (name, c) in [("equivariance", r.equivariance), ("invariance", r.invariance)] {
        let _ = writeln!(text, "{name:<13} max abs {:.3e}  max rel {:.3e}", c.max_abs, c.max_rel);
    }
    let _ = writeln!(
        text,
        "tolerance {:e}: {}",
        r.tolerance,
        if r.passed { "PASS" } else { "FAIL" }
    );
    emit_report(cfg, &r, text)?;
    Ok(r.passed)
}

pub fn cmd_hardy(cfg: &RunConfig) -> Result<bool, CliError> {
    let f = load_signal(&cfg.source)?;
    let r: HardyNormReport = hardy_norm(&f)?;
    ensure_finite(&[r.total], "Hardy norm")?;
    let mut text = String::new();
    let _ = writeln!(text, "l1 part: {}", r.l1_part);
    for (j, p) in r.transform_parts.iter().enumerate() {
        let _ = writeln!(text, "transform part {j}: {p}");
    }
    let _ = writeln!(text, "hardy norm: {}", r.total);
    emit_report(cfg, &r, text)?;
    Ok(true)
}

/// A summary of a signal or coefficient file.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FileInfo {
    Signal {
        dims: usize,
        extents: Vec<usize>,
        spacing: f64,
        samples: usize,
        energy: f64,
    },
    Coefficients {
        format: String,
        mode: String,
        lattice: String,
        q: f64,
        m: usize,
        scales: Vec<f64>,
        rotations: usize,
        coefficients: usize,
        norm: f64,
    },
}

pub fn file_info(path: &Path) -> Result<FileInfo, CliError> {
    let bytes = read_file(path)?;
    let bad = |e: ScatterError| CliError::Io(format!("{}: {e}", path.display()));
    let coefficients = |s: ScatteringCoefficients, format: &str| FileInfo::Coefficients {
        format: format.into(),
        mode: format!("{:?}", s.kind()).to_lowercase(),
        lattice: format!("{:?}", s.lattice()).to_lowercase(),
        q: s.q(),
        m: s.depth(),
        scales: s.scales().to_vec(),
        rotations: s.angles().len(),
        coefficients: s.len(),
        norm: scattering_norm(&s),
    };
    if bytes.starts_with(b"SIGF") {
        let f = decode_sigf(&bytes).map_err(bad)?;
        let g = f.grid();
        Ok(FileInfo::Signal {
            dims: g.n_dims(),
            extents: g.extents().to_vec(),
            spacing: g.spacing(),
            samples: g.len(),
            energy: lq_norm_pow(&f, 2.0)?,
        })
    } else if bytes.starts_with(b"SCTR") {
        Ok(coefficients(decode_sctr(&bytes).map_err(bad)?, "sctr"))
    } else if bytes.first() == Some(&b'{') {
        let text = String::from_utf8(bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(coefficients(from_json(&text).map_err(bad)?, "json"))
    } else {
        Err(CliError::Io(format!(
            "{}: not a SIGF, SCTR or JSON coefficient file",
            path.display()
        )))
    }
}

pub fn cmd_info(path: &Path, json: bool) -> Result<bool, CliError> {
    let info = file_info(path)?;
    if json {
        print!("{}", to_json_text(&info)?);
        return Ok(true);
    }
    match info {
        FileInfo::Signal {
            dims,
            extents,
            spacing,
            samples,
            energy,
        } => {
            println!("signal: {dims}D, extents {extents:?}, spacing {spacing}");
            println!("samples: {samples}");
            println!("energy: {energy}");
        }
        FileInfo::Coefficients {
            format,
            mode,
            lattice,
            q,
            m,
            scales,
            rotations,
            coefficients,
            norm,
        } => {
            println!("coefficients ({format}): {mode} scales, {lattice} lattice, q = {q}, m = {m}");
            println!("scales: {} ({rotations} rotations)", scales.len());
            println!("coefficients: {coefficients}");
            println!("norm: {norm}");
        }
    }
    Ok(true)
}
