//! Command-line front end: argument and config-file parsing, job execution
//! and report writing.

pub mod args;
pub mod config;
pub mod execute;

pub use config::{parse_config, ConfigError, RunConfig};
pub use execute::{execute, ExitStatus};
