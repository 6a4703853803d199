//! File formats, reports and the `fairxp` command line on top of
//! [`fairxp_core`].

pub mod bundle;
pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use error::{Error, ExitCode, Result};
