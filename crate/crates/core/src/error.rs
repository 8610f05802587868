use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("instance has no vertices")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("source and sink coincide (vertex {0})")]
    SourceIsSink(usize),
    #[error("clique of size {0} is too small, at least 3 vertices are required")]
    CliqueTooSmall(usize),
    #[error("row references column {col} but the problem has {ncols} columns")]
    UnknownColumn { col: usize, ncols: usize },
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("cannot decode path: {0}")]
    Decode(String),
    #[error("point is integral, nothing to branch on")]
    IntegralPoint,
    #[error("linear program failed: {0}")]
    Numerical(String),
}
