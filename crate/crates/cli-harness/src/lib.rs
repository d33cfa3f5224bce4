//! Library side of the `sep` command line.

pub mod commands;
pub mod config;
pub mod error;
pub mod json;
pub mod validate;

pub use config::{Overrides, RunConfig, WORKERS_ENV};
pub use error::{CliError, Result};
pub use validate::{criterion_ids, run_all, run_criterion, CriterionResult, Manifest, ValidateOptions, MANIFEST_SCHEMA};
