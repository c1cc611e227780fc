use thiserror::Error;

use crate::graph_core::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("Buster wins: the remaining graph plus every reserve edge is disconnected")]
    BusterWins,
    #[error("contracted graph is disconnected; no spanning tree exists")]
    Disconnected,
    #[error("not a spanning tree of the contracted graph: {0}")]
    NotSpanningTree(String),
    #[error("policy error in round {round}: {message}")]
    PolicyError { round: usize, message: String },
    #[error("internal identity violated: {0}")]
    IdentityViolation(String),
    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid series: {0}")]
    InvalidSeries(String),
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
