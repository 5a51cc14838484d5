//! Library backing the `probclone` command-line tool.
//!
//! Everything the binary does lives here so the report schema, the on-disk
//! file formats, and the command implementations can be exercised directly
//! by tests: [`formats`] defines the state and machine files, [`report`]
//! the structured run reports every command emits, [`commands`] the command
//! bodies, and [`cli`] the argument parser and dispatch loop the binary
//! delegates to.

#![warn(missing_docs)]

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use error::CliError;
