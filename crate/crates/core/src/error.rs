use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("graph has {0} vertices; at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid edge {u}-{v}: {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} exceeds the supported cap of {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
