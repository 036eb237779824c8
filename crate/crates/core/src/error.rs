use thiserror::Error;

/// Errors raised by the series, quiver and algebra routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A computation could not certify any coefficient.
    #[error("truncation underflow in {op}: output window is empty")]
    TruncationUnderflow { op: &'static str },

    #[error("empty window [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("series is not invertible: {reason}")]
    NotInvertible { reason: String },

    #[error("length mismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex pair must be distinct, got `{0}` twice")]
    SameVertex(String),

    #[error("unlinking `{a}` and `{b}` requires at least one edge between them")]
    UnlinkRequiresEdge { a: String, b: String },

    #[error("cannot substitute a degree-0 monomial for variable {var}")]
    DegreeZeroSubstitution { var: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Quiver file validation; `location` names the offending entry.
    #[error("invalid quiver at {location}: {message}")]
    InvalidQuiver { location: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
