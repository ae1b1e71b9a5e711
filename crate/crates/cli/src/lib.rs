//! Command-line front end for `coxk-core`: file formats, error codes and the
//! `coxk` argument parser. [`run`] is the whole program minus process exit.

mod app;
mod error;
pub mod formats;

pub use app::{run, Output};
pub use error::CliError;
