use thiserror::Error;

use crate::multigraph::{EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(VertexId),
    #[error("vertex set must not be empty")]
    EmptyVertexSet,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("time-function covers {found} edges but the graph has {expected}")]
    TimeFunctionSize { expected: usize, found: usize },
    #[error("labels must be positive (edge {0} has label 0)")]
    ZeroLabel(EdgeId),
    #[error("invalid temporal walk at position {index}: {reason}")]
    InvalidWalk { index: usize, reason: String },
    #[error("source and target must differ")]
    SameEndpoints,
    #[error("vertex cut is undefined: {0} and {1} are adjacent")]
    AdjacentTerminals(VertexId, VertexId),
    #[error("{what} has size {size}, above the guard of {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("precondition violated: {0}")]
    Contract(String),
    #[error("assembly failed: {0}")]
    Assembly(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid parameters: {0}")]
    Usage(String),
}
