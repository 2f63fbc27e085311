//! Command-line front end for `pseudoschur`.
//!
//! The binary is a thin wrapper around [`run`], which takes the argument
//! list and output sinks and returns the process exit code, so the whole
//! surface is testable in-process.

pub mod format;

mod app;

pub use app::{run, EXIT_FAILURE, EXIT_MATH, EXIT_OK, EXIT_USAGE};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
