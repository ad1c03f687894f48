use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("dimension mismatch: shape has {expected} factors, vertex has {got} coordinates")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {value} at position {position} is outside 1..={size}")]
    CoordinateOutOfRange { position: usize, value: u64, size: u32 },

    #[error("vertex index {index} is outside 0..{len}")]
    IndexOutOfRange { index: u64, len: u64 },

    #[error("vertices are at distance {0}, expected 2")]
    NotDistanceTwo(usize),

    #[error("{what} has {size} vertices, cap is {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("operation needs at least {need} factors, shape has {got}")]
    RankTooSmall { need: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex set universe {got} does not match {expected}")]
    UniverseMismatch { expected: usize, got: usize },

    #[error("clique {0} is not transversal")]
    NonTransversal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// Short stable tag used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidShape(_) => "invalid-shape",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::CoordinateOutOfRange { .. } => "coordinate-out-of-range",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::NotDistanceTwo(_) => "not-distance-two",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::Overflow(_) => "overflow",
            Error::RankTooSmall { .. } => "rank-too-small",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::Disconnected => "disconnected",
            Error::InvalidGraph(_) => "invalid-graph",
            Error::UniverseMismatch { .. } => "universe-mismatch",
            Error::NonTransversal(_) => "non-transversal",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}
