//! Configuration, cross-check orchestration and reporting.

mod config;
mod report;
mod run;

use thiserror::Error;

pub use config::{Engine, OutputFormat, RunConfig};
pub use report::{emit, emit_as, Record, Report, Summary, Verdict};
pub use run::{profile_grid, run_crosscheck};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum HubError {
    #[error("no engines selected")]
    NoEngines,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown output format '{0}'")]
    UnknownFormat(String),
    #[error("could not emit report: {0}")]
    Emit(String),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[cfg(test)]
mod tests;
