//! Command-line front end for `tensoraxiom-core`, plus the randomized
//! acceptance suite and the brute-force oracles it compares against.

pub mod commands;
pub mod oracle;
pub mod random;
pub mod suite;

pub use commands::{execute, run, Cli, CliError, Command, Outcome};
