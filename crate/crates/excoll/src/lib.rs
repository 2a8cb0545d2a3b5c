//! Std companion to `excoll-core`: shipped data, parallel drivers, reports and
//! the acceptance suite behind `excoll reproduce-all`.

pub mod acceptance;
pub mod cli;
pub mod data;
pub mod par;
pub mod report;

pub use excoll_core as core;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] excoll_core::Error),
    #[error("data file: {0}")]
    Data(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("invalid input: {0}")]
    Input(String),
}
