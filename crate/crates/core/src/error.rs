use thiserror::Error;

/// Errors surfaced by graph construction, spectral operations, and rewiring.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("node {0} out of range (graph has {1} nodes)")]
    NodeOutOfRange(usize, usize),
    #[error("self-loop ({0}, {0}) rejected")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(usize, usize),
    #[error("node {0} is isolated; D^(-1/2) is undefined")]
    IsolatedNode(usize),
    #[error("vector length {got} does not match expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector lies in the deflated direction (norm {0:e} after deflation)")]
    DegenerateVector(f64),
    #[error("graph with {n} nodes exceeds the dense solver guard ({guard})")]
    GraphTooLarge { n: usize, guard: usize },
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("pair ({0}, {0}) is a self-pair")]
    SelfPair(usize),
    #[error("({0}, {1}) is already an edge")]
    EdgeExists(usize, usize),
    #[error("graph is complete; no edge can be added")]
    GraphComplete,
    #[error("vector is not deflated against sqrt(d): |<x, sqrt(d)>| = {0:e}")]
    NotDeflated(f64),
    #[error("zero vector")]
    ZeroVector,
    #[error("layer does not map ker(L) into ker(L); energy ratio is unbounded")]
    EnergyBlowup,
    #[error("no weight matrix provided for relation tag {0}")]
    UnknownRelation(u8),
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
