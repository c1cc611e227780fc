//! The Buster/Fixer game on weighted multigraphs: Buster removes edges from a
//! connected graph, Fixer reconnects it from a weighted reserve. The crate
//! plays series of rounds, computes greedy (minimum spanning tree) Fixer
//! moves, and decides exactly whether a Fixer response is optimal.

pub mod adjudicator;
pub mod cli_io;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod graph_core;
pub mod reconnect;
pub mod weight;

pub use error::{GameError, Result};
pub use graph_core::{edge_set, Edge, EdgeId, EdgeSet, Multigraph};
pub use weight::Weight;
