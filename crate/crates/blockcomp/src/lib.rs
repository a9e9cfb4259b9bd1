//! File formats, drivers and command-line plumbing around `blockcomp-core`.

pub mod asp;
pub mod config;
pub mod error;
pub mod qasm;
pub mod report;
pub mod run;

pub use error::CliError;
