//! Command-line front end for `torfol`: JSON input formats, a polynomial
//! parser, canonical printing, deterministic reports and the bundled
//! worked examples.

pub mod commands;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod parse;
pub mod print;
pub mod report;
pub mod schema;
pub mod verify;

pub use commands::{run, Outcome};
pub use error::CliError;
