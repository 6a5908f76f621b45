//! Identity registry, verification engine and command-line front end for
//! integrals of the Dedekind eta function, on top of [`etaint_core`].

pub mod cli;
pub mod report;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad command line or parameter outside its domain.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] etaint_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
