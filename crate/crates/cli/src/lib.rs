//! Command-line front end: configuration loading, reports and drawings.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod svg;

pub use error::CliError;
