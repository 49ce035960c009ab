//! Library side of the `qlab` command: file formats, reports and command bodies.

pub mod commands;
pub mod error;
pub mod qnt;
pub mod report;

pub use error::CliError;
pub use report::{Format, Report};
