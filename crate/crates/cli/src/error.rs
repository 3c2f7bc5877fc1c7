use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Malformed input file; `line`/`column` are 1-based when known.
    #[error("{origin}{}: {message}", location(*line, *column))]
    Parse { origin: String, line: Option<usize>, column: Option<usize>, message: String },
    /// Malformed act expression; `position` is the 1-based character offset.
    #[error("expression error at position {position}: {message}\n  {expr}\n  {caret:>width$}", caret = "^", width = *position)]
    Expr { expr: String, position: usize, message: String },
    #[error("unknown check suite '{name}'; available: all, {available}")]
    UnknownSuite { name: String, available: String },
    #[error(transparent)]
    Core(#[from] actgeo_core::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(":{l}:{c}"),
        (Some(l), None) => format!(":{l}"),
        _ => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
