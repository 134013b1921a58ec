// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bus specification: {0}")]
    InvalidSpec(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("wire index {index} out of range for a {count}-wire bus")]
    WireOutOfRange { index: usize, count: usize },

    #[error("wire {wire} does not transition")]
    NoTransition { wire: usize },

    #[error("waveform never crosses threshold {threshold}")]
    NoCrossing { threshold: f64 },

    #[error("trace has not settled: final sample is {deviation:e} away from its DC value")]
    NotSettled { deviation: f64 },

    #[error("traces do not share a time grid")]
    GridMismatch,

    #[error("system matrix is singular or not positive definite (pivot {pivot} at row {row})")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("codeword width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag, used in error JSON emitted by the CLI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "invalid-spec",
            Error::InvalidPattern(_) => "invalid-pattern",
            Error::WireOutOfRange { .. } => "wire-out-of-range",
            Error::NoTransition { .. } => "no-transition",
            Error::NoCrossing { .. } => "no-crossing",
            Error::NotSettled { .. } => "not-settled",
            Error::GridMismatch => "grid-mismatch",
            Error::SingularSystem { .. } => "singular-system",
            Error::Unsupported(_) => "unsupported",
            Error::Budget(_) => "budget",
            Error::WidthMismatch { .. } => "width-mismatch",
            Error::InvalidScenario(_) => "invalid-scenario",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
