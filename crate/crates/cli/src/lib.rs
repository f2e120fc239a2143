//! Library side of the command-line front end: file formats, command
//! implementations, and report rendering. The thin binary in `main.rs`
//! parses arguments and maps errors to exit codes.

pub mod commands;
pub mod error;
pub mod report;
pub mod ser;

pub use error::CliError;
