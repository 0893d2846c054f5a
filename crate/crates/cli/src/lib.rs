//! Scenario files, parallel Monte Carlo orchestration and the `satcov`
//! command line on top of `satcov`.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod rician;
pub mod runner;

pub use error::{CliError, Result};
