//! Experiment catalogue and report writer for Galilean frame-change checks.
//!
//! Each experiment produces a list of claims (expected, measured, tolerance,
//! pass). Reports are a CSV with one claim per row plus a JSON summary.

pub mod catalog;
pub mod config;
pub mod decay;
pub mod error;
pub mod experiments;
pub mod reference;
pub mod report;
pub mod sampling;
pub mod tolerances;

pub use config::{ExperimentId, Params, ScenarioConfig};
pub use error::{Result, RunnerError};
pub use experiments::{run, run_config};
pub use report::{Claim, RunReport};
