//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value violates its stated invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Matrix/vector dimensions do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An input is outside the operation's domain (empty vector, label not in {0,1}, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A CSV cell failed numeric parsing.
    #[error("parse error at row {row}, column \"{column}\": {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    /// The data violates the expected schema (non-binary label, zero-variance feature, ...).
    #[error("schema error: {0}")]
    Schema(String),

    /// An operation left no usable data (empty IQR filter result, empty threshold selection).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// A stratified split would leave a class absent from one side.
    #[error("stratification error: {0}")]
    Stratification(String),

    /// Training produced a non-finite cost.
    #[error("training diverged at epoch {epoch}: {message}")]
    Diverged { epoch: u32, message: String },

    /// An optimizer step received a non-finite gradient.
    #[error("non-finite gradient in layer {layer}")]
    NonFiniteGradient { layer: usize },

    /// A ledger file is internally inconsistent.
    #[error("ledger integrity error at line {line}: {message}")]
    LedgerIntegrity { line: usize, message: String },

    /// A surrogate fit cannot proceed (rank deficiency, single-class labels, ...).
    #[error("fit error: {0}")]
    Fit(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
