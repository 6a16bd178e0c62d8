//! Command-line front end: group specs, configuration, output schemas and
//! command dispatch.

pub mod commands;
pub mod config;
pub mod output;
pub mod spec;

pub use commands::{dispatch, Cli, Command};
pub use config::{OutFormat, RunConfig};
pub use spec::{parse_spec, GroupSpec};
