use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("loop at vertex {0} rejected: signed graphs here are loopless")]
    LoopRejected(VertexId),
    #[error("vertex {0} does not exist")]
    BadVertex(VertexId),
    #[error("edge {0} does not exist")]
    BadEdge(EdgeId),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("signature has {got} entries but the graph has {expected} edges")]
    DomainMismatch { expected: usize, got: usize },
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("the two distinguished edges must be distinct (both are {0})")]
    SameEdge(EdgeId),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("bad recipe: {0}")]
    BadRecipe(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// Two independent computations disagreed; always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
