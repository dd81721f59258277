use thiserror::Error;

use crate::solver::SolvabilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("half-length must be positive and finite, got {0}")]
    InvalidHalfLength(f64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("length mismatch: expected {expected} {what}, got {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("x = {x} is outside the domain [{lo}, {hi})")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("mismatched half-lengths: {0} vs {1}")]
    MismatchedHalfLength(f64, f64),

    #[error("{nodes} quadrature nodes is below the minimum {min} for {harmonics} harmonics")]
    QuadratureTooCoarse {
        nodes: usize,
        min: usize,
        harmonics: usize,
    },

    #[error("non-finite value {value} encountered at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error("invalid problem: {0}")]
    Validation(String),

    #[error("A_0 vanishes on cell {cell} ([{lo}, {hi}))")]
    ZeroLeadingCoefficient { cell: usize, lo: f64, hi: f64 },

    #[error("{0}")]
    Resonant(SolvabilityReport),

    #[error("{0}")]
    Verification(String),

    #[error("with {cells} cells: {source}")]
    Discretized {
        cells: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("problem file {path}: {message}")]
    Parse { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resonant(_) => 3,
            Error::Discretized { source, .. } => source.exit_code(),
            Error::Io(_) => 4,
            _ => 2,
        }
    }
}
