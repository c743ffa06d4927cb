use thiserror::Error;

use crate::model::VertexId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("digraph must have at least one vertex")]
    EmptyVertexSet,
    #[error("vertex {0} declared more than once")]
    DuplicateVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate directed edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge endpoint {0} is not a declared vertex")]
    DanglingEndpoint(VertexId),
    #[error("non-finite filtration value for {0}")]
    NonFinite(String),
    #[error("edge ({source_id}, {target_id}) has filtration {value} below its endpoints' value {floor}")]
    EdgeBelowEndpoints {
        source_id: VertexId,
        target_id: VertexId,
        value: f64,
        floor: f64,
    },
    #[error("dimension {k} out of range (max {max})")]
    DimensionOutOfRange { k: usize, max: usize },
    #[error("invalid filtration pair: a = {a} > b = {b}")]
    InvalidPair { a: f64, b: f64 },
    #[error("matrix of size {size} exceeds capacity limit {limit}")]
    Capacity { size: usize, limit: usize },
    #[error("symmetric eigensolver did not converge on {n}x{n} matrix (inf-norm {norm})")]
    NoConvergence { n: usize, norm: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector cannot be an eigenvector")]
    ZeroVector,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("invalid distance matrix: {0}")]
    DistanceMatrix(String),
    #[error("invalid molecular system: {0}")]
    Molecule(String),
    #[error("rounding step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed report: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
