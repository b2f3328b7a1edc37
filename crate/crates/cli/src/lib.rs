//! Text front end for `polygraph-core`: a presentation language, report
//! rendering, and the command implementations behind the `polygraph` binary.

pub mod commands;
pub mod dsl;
pub mod random;
pub mod report;

pub use commands::{run, run_args, Cli, Command, Outcome};
