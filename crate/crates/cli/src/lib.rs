//! Command-line front end for `toroidal-core`.
//!
//! [`run`] takes the full argument list and returns the exit code with
//! everything that would be printed, so tests can drive it in-process.

pub mod commands;
pub mod lie_file;
pub mod parse;

pub use commands::{run, Outcome};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
