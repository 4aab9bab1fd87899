//! Command-line front end for the `fedpir-core` engine: config files,
//! CSV output and the verbs behind the `fedpir` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;

pub use config::RunConfig;
pub use error::CliError;
