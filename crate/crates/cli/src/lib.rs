//! Command-line front end for `actgeo-core`: group and act files, act builder
//! expressions and the verification suite behind `actgeo check`.

pub mod checks;
pub mod error;
pub mod expr;
pub mod input;

pub use error::{CliError, Result};
