use thiserror::Error;

/// Errors raised while reading the edge-list text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("line {line}: malformed line {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    IndexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("header declares {expected} edges but {found} were listed")]
    EdgeCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("step parameter h must be positive, got {0}")]
    NonPositiveStep(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not a path")]
    NotAPath,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("index ({i}, {j}) out of range for n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("matrix is not positive definite (pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("matrix is singular at column {0}")]
    Singular(usize),
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    EigenNoConvergence(usize),
    #[error("forest enumeration supports at most {max} edges, graph has {m}")]
    TooManyEdges { m: usize, max: usize },
    #[error("non-pendant vertex {vertex} has degree {degree}, expected 3")]
    DegreeCondition { vertex: usize, degree: usize },
    #[error("engine {engine} cannot be used here: {reason}")]
    EngineMismatch { engine: String, reason: String },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no strictly increasing neighbor from vertex {0}")]
    MonotonePathStuck(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
