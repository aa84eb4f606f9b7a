use thiserror::Error;

use crate::graph::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PqError {
    #[error("empty ground set")]
    EmptyGround,
    #[error("element {0} is not in the ground set")]
    UnknownElement(usize),
    #[error("operation on the null tree")]
    NullTree,
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("not a permutation of the ground set")]
    NotPermutation,
    #[error("{0} orders exceed the cap of {1}")]
    CapExceeded(u128, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pq(#[from] PqError),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid sunflower instance: {0}")]
    Invalid(ValidationReport),
    #[error("not a sunflower instance")]
    NotSunflower,
    #[error("invalid enumeration: {0}")]
    Enumeration(String),
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
