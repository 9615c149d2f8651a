use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),

    #[error("edge {0} is not in the graph")]
    UnknownEdge(Edge),

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("parallel edge {0}")]
    ParallelEdge(Edge),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not 2-connected: {0}")]
    NotTwoConnected(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance has {n} vertices, above the exhaustive limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid ear-decomposition: {0}")]
    InvalidDecomposition(String),

    /// A rewrite reached a configuration that property (P) excludes.
    #[error("property (P) violated: {0}")]
    PropertyP(String),

    #[error("no progress after {iterations} iterations")]
    NoProgress { iterations: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("generator self-check failed: {0}")]
    SelfCheck(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}
