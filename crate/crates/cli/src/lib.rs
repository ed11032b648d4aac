//! File formats, run configuration and the `generate` / `analyze` /
//! `benchmark` commands behind the `spatial-rc` binary.

pub mod commands;
pub mod config;
mod error;
pub mod formats;
pub mod summary;

pub use config::RunConfig;
pub use error::CliError;
