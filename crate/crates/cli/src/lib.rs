//! Command-line front end for `fibrekit`: parses twist words and flags,
//! dispatches to the computations, and renders deterministic JSON or TSV.

pub mod error;
pub mod parse;
pub mod run;

pub use error::{CliError, ParseError};
pub use parse::{format_word, parse_word};
pub use run::{run, Cli, Command, Format};
