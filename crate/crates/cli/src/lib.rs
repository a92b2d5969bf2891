//! Command-line driver for the `lqscatter` library.
//!
//! Every subcommand resolves a [`config::RunConfig`] from flags layered over
//! an optional TOML file, runs inside a thread pool sized by the
//! `SCATTER_THREADS` environment variable, and maps its outcome onto the
//! exit codes in [`ExitStatus`].

pub mod commands;
pub mod config;

use std::io::Write;
use std::path::Path;

use thiserror::Error;

use lqscatter::ScatterError;

use config::{Cli, Command, CommonArgs, RunConfig, Settings};

/// Environment variable capping the worker threads; `0` or unset means one
/// per available CPU.
pub const THREADS_VAR: &str = "SCATTER_THREADS";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    /// Invalid flags, configuration or parameters.
    #[error("configuration error: {0}")]
    Config(String),
    /// Unreadable input, unwritable output or a malformed file.
    #[error("i/o error: {0}")]
    Io(String),
    /// A NaN or infinity reached the output.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl From<ScatterError> for CliError {
    fn from(err: ScatterError) -> Self {
        match err {
            ScatterError::Io(m) => CliError::Io(m),
            ScatterError::Numeric(m) => CliError::Numeric(m),
            ScatterError::Config(m) => CliError::Config(m),
            ScatterError::Format(_) => CliError::Io(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Success = 0,
    /// The run completed but a check did not pass.
    CheckFailed = 1,
    ConfigError = 2,
    IoError = 3,
    NumericFailure = 4,
}

impl CliError {
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            CliError::Config(_) => ExitStatus::ConfigError,
            CliError::Io(_) => ExitStatus::IoError,
            CliError::Numeric(_) => ExitStatus::NumericFailure,
        }
    }
}

/// Write `bytes` to a temporary file next to `path` and rename it into
/// place, so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Worker count from `SCATTER_THREADS`; `0` lets the pool choose.
pub fn thread_count(value: Option<&str>) -> Result<usize, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => v
            .parse()
            .map_err(|_| CliError::Config(format!("{THREADS_VAR} must be a non-negative integer, got '{v}'"))),
    }
}

fn resolve(common: &CommonArgs, flags: Settings) -> Result<RunConfig, CliError> {
    RunConfig::resolve(common.layered(flags)?)
}

fn dispatch(command: &Command) -> Result<bool, CliError> {
    match command {
        Command::Scatter(a) => {
            let mut flags = a.common.settings();
            flags.angles.lattice = a.lattice;
            commands::cmd_scatter(&resolve(&a.common, flags)?)
        }
        Command::CheckWavelet(a) => commands::cmd_check_wavelet(&resolve(a, a.settings())?),
        Command::Stability(a) => {
            let mut flags = a.common.settings();
            flags.stability.family = a.family;
            flags.stability.params = a.params.as_deref().map(parse_list).transpose()?;
            flags.stability.amplitude = a.amplitude;
            flags.stability.cycles = a.cycles;
            flags.stability.band = a.band;
            commands::cmd_stability(&resolve(&a.common, flags)?)
        }
        Command::Equivariance(a) => {
            let mut flags = a.common.settings();
            flags.equivariance.theta = a.theta;
            flags.equivariance.tolerance = a.tolerance;
            commands::cmd_equivariance(&resolve(&a.common, flags)?)
        }
        Command::Hardy(a) => commands::cmd_hardy(&resolve(a, a.settings())?),
        Command::Info(a) => commands::cmd_info(&a.path, a.json),
    }
}

/// Comma-separated numbers; an empty string is an empty list.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Config(format!("'{t}' is not a number")))
        })
        .collect()
}

/// Run a parsed command line and return the process exit status.
pub fn run(cli: &Cli) -> ExitStatus {
    let outcome = thread_count(std::env::var(THREADS_VAR).ok().as_deref()).and_then(|threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Config(format!("cannot start {threads} threads: {e}")))?;
        pool.install(|| dispatch(&cli.command))
    });
    match outcome {
        Ok(true) => ExitStatus::Success,
        Ok(false) => ExitStatus::CheckFailed,
        Err(e) => {
            eprintln!("lqscatter: {e}");
            e.exit_status()
        }
    }
}
