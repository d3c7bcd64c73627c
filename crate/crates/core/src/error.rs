use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants are grouped by the kind of contract that was broken rather than
/// by module, so callers can map them onto exit codes without knowing which
/// subsystem produced them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} values, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("system is not dilation invariant: polynomial {index} mixes total degrees")]
    NotHomogeneous { index: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("out of window: {0}")]
    OutOfWindow(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("search limit of {limit} nodes exceeded after {nodes} nodes")]
    SearchLimit { nodes: u64, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("embedding error: {0}")]
    Embedding(String),

    #[error("numeric integrity error: {0}")]
    NumericIntegrity(String),

    #[error("comparison incomplete: {0}")]
    ComparisonIncomplete(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("solution enumeration hit cap of {cap}; refusing to emit an incomplete instance")]
    CapReached { cap: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
