use thiserror::Error;

/// Errors raised by the scattering library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScatterError {
    /// Shapes or grids of two operands disagree, or an operation was handed a
    /// signal with the wrong number of dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A scalar parameter is outside the domain the operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A filter bank or transform was configured in a way that cannot be
    /// realized on the chosen grid.
    #[error("configuration error: {0}")]
    Config(String),

    /// The operation requires a bank of a different scale mode.
    #[error("mode error: {0}")]
    Mode(String),

    /// A scattering path refers to a filter that does not exist.
    #[error("path error: {0}")]
    Path(String),

    /// Two coefficient sets cannot be compared.
    #[error("incompatible coefficients: {0}")]
    Incompatible(String),

    /// A computation produced a NaN or an infinity.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Malformed binary or text input.
    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for ScatterError {
    fn from(err: std::io::Error) -> Self {
        ScatterError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, ScatterError>;
