//! Scenario files, transcripts and the command-line front end.

pub mod cli;
pub mod scenario;
pub mod transcript;

use thiserror::Error;

use crate::error::GameError;

pub use cli::run;
pub use scenario::{parse_scenario, render_scenario, EdgeDecl, Pool, ScenarioFile, ScriptAction};
pub use transcript::{format_set, parse_edge_set, parse_transcript, render_transcript, replay, Transcript};

#[derive(Debug, Error)]
pub enum CliIoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error("replay mismatch at transcript line {line}: expected `{expected}`, found `{found}`")]
    ReplayMismatch {
        line: usize,
        expected: String,
        found: String,
    },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
