//! Run configuration: command-line flags layered over an optional TOML file.
//!
//! Flags and file share one schema, [`Settings`]. Both are turned into TOML
//! tables, the flag table is merged over the file table key by key, and the
//! result is resolved into a fully specified [`RunConfig`].

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use lqscatter::signal::Contraction;
use lqscatter::wavelet::{Normalization, ScaleMode};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "lqscatter", version, about = "Nonwindowed Lq wavelet scattering transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scatter a signal and write the coefficients.
    Scatter(ScatterArgs),
    /// Report admissibility, decay, moments and norm equivalence of a wavelet.
    CheckWavelet(CommonArgs),
    /// Sweep a deformation family and tabulate stability ratios.
    Stability(StabilityArgs),
    /// Measure rotation equivariance and invariance errors.
    Equivariance(EquivarianceArgs),
    /// Hardy-space norm of a signal.
    Hardy(CommonArgs),
    /// Describe a SIGF signal file or an SCTR/JSON coefficient file.
    Info(InfoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Binary,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SynthKind {
    /// Band-limited Gaussian noise.
    Noise,
    /// Band-limited noise under a Gaussian window.
    Localized,
    /// A centered Gaussian bump.
    Bump,
    /// A periodic plane wave.
    PlaneWave,
    /// The zero signal.
    Zeros,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    Dyadic,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum NormName {
    L1,
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ContractionName {
    Modulus,
    Relu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeName {
    /// One coefficient per (scale, rotation) path.
    Equivariant,
    /// The first rotation integrated out.
    Invariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Dilation,
    SinusoidalWarp,
}

/// Flags shared by every transform-driving subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML configuration file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// SIGF input signal. Without it a synthetic signal is generated.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file, written atomically.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Shorthand for `--format json`.
    #[arg(long)]
    pub json: bool,
    /// Seed for the synthetic signal.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Synthetic signal kind.
    #[arg(long, value_enum)]
    pub synth: Option<SynthKind>,
    /// Number of dimensions of the synthetic signal (1 or 2).
    #[arg(long)]
    pub dims: Option<usize>,
    /// Samples per axis of the synthetic signal.
    #[arg(long)]
    pub size: Option<usize>,
    /// Sample spacing of the synthetic signal.
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Lower edge of the noise band (radians per unit length).
    #[arg(long)]
    pub band_low: Option<f64>,
    /// Upper edge of the noise band (radians per unit length).
    #[arg(long)]
    pub band_high: Option<f64>,
    /// Width of the Gaussian bump or window.
    #[arg(long)]
    pub width: Option<f64>,
    /// Cycles per axis of the plane wave.
    #[arg(long)]
    pub wave_cycles: Option<i64>,

    /// Mother wavelet name.
    #[arg(long)]
    pub wavelet: Option<String>,
    /// Wavelet parameter as `key=value`; repeatable.
    #[arg(long = "param", value_parser = parse_key_value)]
    pub wavelet_params: Vec<(String, f64)>,
    /// Scale grid mode.
    #[arg(long, value_enum)]
    pub mode: Option<ModeName>,
    #[arg(long, allow_hyphen_values = true)]
    pub j_min: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub j_max: Option<i32>,
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub voices: Option<u32>,
    /// Filter normalization.
    #[arg(long, value_enum)]
    pub normalization: Option<NormName>,
    /// Number of rotations (2D only).
    #[arg(long)]
    pub angles: Option<usize>,

    /// Norm exponent q in [1, 2].
    #[arg(long)]
    pub q: Option<f64>,
    /// Number of layers m.
    #[arg(long)]
    pub layers: Option<usize>,
    /// Pointwise contraction.
    #[arg(long, value_enum)]
    pub contraction: Option<ContractionName>,
}

#[derive(Debug, Clone, Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coefficient lattice for rotated banks.
    #[arg(long, value_enum)]
    pub lattice: Option<LatticeName>,
}

#[derive(Debug, Clone, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Deformation family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Family parameters, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Base amplitude of the sinusoidal warp.
    #[arg(long)]
    pub amplitude: Option<f64>,
    /// Cycles of the sinusoidal warp across the cell.
    #[arg(long)]
    pub cycles: Option<u32>,
    /// Largest accepted max/min ratio.
    #[arg(long)]
    pub band: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct EquivarianceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Test rotation in degrees; defaults to one grid step.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Largest accepted relative error.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct InfoArgs {
    /// File to describe.
    pub path: PathBuf,
    /// Print the description as JSON.
    #[arg(long)]
    pub json: bool,
}

fn parse_key_value(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("bad value for '{k}': {e}"))?;
    Ok((k.trim().to_string(), v))
}

/// The file and flag schema. Every field is optional; absent fields fall
/// back to the other layer and then to the defaults in [`RunConfig`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contraction: Option<ContractionName>,
    #[serde(default)]
    pub signal: SignalSettings,
    #[serde(default)]
    pub wavelet: WaveletSettings,
    #[serde(default)]
    pub scales: ScaleSettings,
    #[serde(default)]
    pub angles: AngleSettings,
    #[serde(default)]
    pub stability: StabilitySettings,
    #[serde(default)]
    pub equivariance: EquivarianceSettings,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalSettings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synth: Option<SynthKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band_high: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveletSettings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleSettings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_min: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub voices: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<NormName>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleSettings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeName>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilitySettings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivarianceSettings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl CommonArgs {
    /// The flag layer as [`Settings`].
    pub fn settings(&self) -> Settings {
        Settings {
            input: self.input.clone(),
            output: self.output.clone(),
            format: if self.json {
                Some(OutputFormat::Json)
            } else {
                self.format
            },
            seed: self.seed,
            q: self.q,
            layers: self.layers,
            contraction: self.contraction,
            signal: SignalSettings {
                synth: self.synth,
                dims: self.dims,
                size: self.size,
                spacing: self.spacing,
                band_low: self.band_low,
                band_high: self.band_high,
                width: self.width,
                cycles: self.wave_cycles,
            },
            wavelet: WaveletSettings {
                name: self.wavelet.clone(),
                params: self.wavelet_params.iter().cloned().collect(),
            },
            scales: ScaleSettings {
                mode: self.mode,
                j_min: self.j_min,
                j_max: self.j_max,
                lambda_min: self.lambda_min,
                lambda_max: self.lambda_max,
                voices: self.voices,
                normalization: self.normalization,
            },
            angles: AngleSettings {
                count: self.angles,
                lattice: None,
            },
            ..Settings::default()
        }
    }

    /// Load the configuration file, if any, and overlay `flags` on it.
    pub fn layered(&self, flags: Settings) -> Result<Settings, CliError> {
        match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
                Settings::from_toml(&text)?.overlay(flags)
            }
            None => Ok(flags),
        }
    }
}

impl Settings {
    pub fn from_toml(text: &str) -> Result<Settings, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("invalid configuration file: {e}")))
    }

    /// `self` with every field set in `top` replaced by `top`'s value.
    pub fn overlay(self, top: Settings) -> Result<Settings, CliError> {
        let to_table = |s: &Settings| {
            toml::Table::try_from(s).map_err(|e| CliError::Config(format!("cannot merge settings: {e}")))
        };
        let mut base = to_table(&self)?;
        merge_tables(&mut base, to_table(&top)?);
        base.try_into()
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))
    }
}

fn merge_tables(base: &mut toml::Table, top: toml::Table) {
    for (key, value) in top {
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(t)) => merge_tables(b, t),
            (_, v) => {
                base.insert(key, v);
            }
        }
    }
}

/// Where the input signal comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum SignalSource {
    File(PathBuf),
    Synthetic(SynthSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub dims: usize,
    pub size: usize,
    pub spacing: f64,
    /// `None` means half the fundamental frequency of the grid.
    pub band_low: Option<f64>,
    /// `None` means 0.8 times the Nyquist frequency.
    pub band_high: Option<f64>,
    /// `None` means an eighth of the cell length.
    pub width: Option<f64>,
    pub cycles: i64,
    pub seed: u64,
}

/// How the filter bank is built once the signal grid is known.
#[derive(Debug, Clone, PartialEq)]
pub struct BankSpec {
    pub wavelet: String,
    pub params: BTreeMap<String, f64>,
    pub mode: ModeName,
    /// `None` means derived from the grid.
    pub j_min: Option<i32>,
    pub j_max: Option<i32>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub voices: u32,
    pub normalization: Normalization,
    pub angles: Option<usize>,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: SignalSource,
    pub bank: BankSpec,
    pub q: f64,
    pub m: usize,
    pub kappa: Contraction,
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub lattice: LatticeName,
    pub stability: StabilitySettings,
    pub equivariance: EquivarianceSettings,
}

impl RunConfig {
    /// Apply defaults and validate the scalar invariants.
    pub fn resolve(s: Settings) -> Result<RunConfig, CliError> {
        let q = s.q.unwrap_or(2.0);
        if !(1.0..=2.0).contains(&q) {
            return Err(CliError::Config(format!("q must lie in [1, 2], got {q}")));
        }
        let m = s.layers.unwrap_or(2);
        if m == 0 {
            return Err(CliError::Config("the number of layers must be at least 1".into()));
        }
        let source = match s.input {
            Some(path) => {
                if path.as_os_str().is_empty() {
                    return Err(CliError::Config("the input path is empty".into()));
                }
                SignalSource::File(path)
            }
            None => {
                let sig = s.signal;
                let dims = sig.dims.unwrap_or(1);
                if !(1..=2).contains(&dims) {
                    return Err(CliError::Config(format!("dims must be 1 or 2, got {dims}")));
                }
                SignalSource::Synthetic(SynthSpec {
                    kind: sig.synth.unwrap_or(SynthKind::Noise),
                    dims,
                    size: sig.size.unwrap_or(if dims == 1 { 1024 } else { 64 }),
                    spacing: sig.spacing.unwrap_or(1.0),
                    band_low: sig.band_low,
                    band_high: sig.band_high,
                    width: sig.width,
                    cycles: sig.cycles.unwrap_or(4),
                    seed: s.seed.unwrap_or(0),
                })
            }
        };
        let sc = s.scales;
        let bank = BankSpec {
            wavelet: s.wavelet.name.unwrap_or_else(|| "morlet".into()),
            params: s.wavelet.params,
            mode: sc.mode.unwrap_or(ModeName::Dyadic),
            j_min: sc.j_min,
            j_max: sc.j_max,
            lambda_min: sc.lambda_min,
            lambda_max: sc.lambda_max,
            voices: sc.voices.unwrap_or(4),
            normalization: match sc.normalization.unwrap_or(NormName::L1) {
                NormName::L1 => Normalization::L1,
                NormName::L2 => Normalization::L2,
            },
            angles: s.angles.count,
        };
        Ok(RunConfig {
            source,
            bank,
            q,
            m,
            kappa: match s.contraction.unwrap_or(ContractionName::Modulus) {
                ContractionName::Modulus => Contraction::Modulus,
                ContractionName::Relu => Contraction::ComplexRelu,
            },
            output: s.output,
            format: s.format,
            lattice: s.angles.lattice.unwrap_or(LatticeName::Equivariant),
            stability: s.stability,
            equivariance: s.equivariance,
        })
    }
}

impl BankSpec {
    /// The scale grid for a cell of side `period` (the shortest axis).
    ///
    /// Dyadic defaults run from `2^-1` for the Meyer family (whose top band
    /// sits at the Nyquist frequency of a unit grid) or `2^1` otherwise, up
    /// to a quarter of the cell. Continuous defaults span the same range
    /// with `voices` scales per octave.
    pub fn scale_mode(&self, spacing: f64, period: f64) -> ScaleMode {
        let meyer = self.wavelet.starts_with("meyer");
        let lo = if meyer { -1 } else { 1 } + spacing.log2().round() as i32;
        let hi = (period / if meyer { 4.0 } else { 8.0 }).log2().floor() as i32;
        match self.mode {
            ModeName::Dyadic => ScaleMode::Dyadic {
                j_min: self.j_min.unwrap_or(lo),
                j_max: self.j_max.unwrap_or(hi),
            },
            ModeName::Continuous => ScaleMode::Continuous {
                lambda_min: self.lambda_min.unwrap_or(2f64.powi(lo)),
                lambda_max: self.lambda_max.unwrap_or(2f64.powi(hi)),
                voices: self.voices,
            },
        }
    }
}
