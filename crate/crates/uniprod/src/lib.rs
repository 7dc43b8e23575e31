//! JSON problem files, reports and the `uniprod` command line over `uniprod-core`.

pub mod commands;
pub mod error;
pub mod report;
pub mod schema;
pub mod selftest;

pub use commands::{run, Input, Options};
pub use error::CliError;
pub use report::Report;
