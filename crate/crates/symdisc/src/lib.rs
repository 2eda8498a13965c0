//! Command-line front end for `symdisc-core`: group specifications, JSON
//! file formats, and deterministic reports.

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
pub mod report;
pub mod spec;

pub use cli::{limits_from_env, run, Execution};
pub use error::CliError;
pub use spec::GroupSpec;
