use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate {coord} = {value} lies outside [{lower}, {upper}]")]
    Domain {
        coord: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: String, got: String },

    #[error("fidelity level {level} is not defined for {what}")]
    Level { level: String, what: String },

    #[error("cannot draw an empty design (n = 0)")]
    EmptyDesign,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("training diverged at epoch {epoch} (loss = {loss})")]
    Divergence { epoch: usize, loss: f64 },

    #[error("covariance is not positive definite even with jitter {jitter:e}")]
    Conditioning { jitter: f64 },

    #[error("metric undefined: {0}")]
    Metric(String),

    #[error("allocation of {requested} {what} rows exceeds the pool of {available}")]
    Allocation {
        what: String,
        requested: usize,
        available: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("schema error at row {row}, column `{column}`: {message}")]
    Schema {
        row: usize,
        column: String,
        message: String,
    },

    #[error("row {row}, column `{column}`: value {value} outside bounds [{lower}, {upper}]")]
    Bounds {
        row: usize,
        column: String,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn shape(expected: impl ToString, got: impl ToString) -> Self {
        Error::Shape {
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
