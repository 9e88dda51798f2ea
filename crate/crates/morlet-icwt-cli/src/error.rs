//! CLI error type: every failure carries a stable machine-readable code
//! and maps to one of two exit codes — 2 for rejected input (files,
//! formats, configuration) and 3 for numerical failure (the pipeline
//! produced NaN or infinity).

use morlet_icwt::WaveletError;

/// Exit code for input/configuration validation failures.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for numerical failures (non-finite values produced).
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn validation(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            exit_code: EXIT_VALIDATION,
        }
    }

    pub fn numerical(code: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            exit_code: EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::validation("E_IO", e.to_string())
    }
}

impl From<WaveletError> for CliError {
    fn from(e: WaveletError) -> Self {
        let message = e.to_string();
        match e {
            WaveletError::NonFinite { .. } => Self::numerical("E_NONFINITE", message),
            WaveletError::InvalidGrid { .. } => Self::validation("E_GRID", message),
            WaveletError::InvalidSignal { .. } => Self::validation("E_SIGNAL", message),
            WaveletError::InvalidScales { .. } => Self::validation("E_SCALES", message),
            WaveletError::InvalidParameter { .. } => Self::validation("E_PARAM", message),
            WaveletError::DimensionMismatch { .. } => Self::validation("E_DIMENSIONS", message),
            WaveletError::EmptySelection { .. } => Self::validation("E_EMPTY_SELECTION", message),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
