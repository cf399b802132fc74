use thiserror::Error;

use crate::graph::{NotBipartite, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("variant error: {0}")]
    Variant(String),
    #[error(transparent)]
    NotBipartite(#[from] NotBipartite),
    #[error("vertex {vertex} has degree {degree}, above the bound {bound}")]
    DegreeExceeded { vertex: VertexId, degree: usize, bound: usize },
    #[error("input error: {0}")]
    Input(String),
    /// A bound or identity the algorithm guarantees did not hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} has size {size}, above the oracle cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error(transparent)]
    NotBipartite(#[from] NotBipartite),
}

pub(crate) fn internal(msg: impl Into<String>) -> SolveError {
    SolveError::Internal(msg.into())
}
