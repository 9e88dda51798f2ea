//! Error types shared by all library operations.

use thiserror::Error;

/// Errors produced by constructors and transform operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaveletError {
    /// A time grid violated its invariants (non-positive step, too few
    /// samples, non-finite fields).
    #[error("invalid time grid: {reason}")]
    InvalidGrid { reason: String },

    /// A signal violated its invariants (length mismatch, non-finite
    /// values, unmet length requirements such as parity or power of two).
    #[error("invalid signal: {reason}")]
    InvalidSignal { reason: String },

    /// A scale grid violated its invariants (too short, negative, not
    /// strictly increasing, non-finite).
    #[error("invalid scale grid: {reason}")]
    InvalidScales { reason: String },

    /// A scalar parameter was out of its documented domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Matrix/vector dimensions disagree between collaborating values.
    #[error("dimension mismatch: {reason}")]
    DimensionMismatch { reason: String },

    /// A restriction (region or mask) selected too few rows or columns to
    /// operate on.
    #[error("empty selection: {reason}")]
    EmptySelection { reason: String },

    /// A computation produced non-finite values (overflow or NaN).
    #[error("non-finite result: {reason}")]
    NonFinite { reason: String },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, WaveletError>;
