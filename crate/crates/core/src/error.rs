// SPDX-License-Identifier: MIT OR Apache-2.0

use std::io;

/// Every failure the toolkit can report. The variant name doubles as the
/// error name printed by the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("bad bundle format: {0}")]
    Format(String),
    #[error("corrupt payload: {0}")]
    CorruptPayload(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("degenerate vector: {0}")]
    DegenerateVector(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("too few items: {0}")]
    TooFewItems(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("degenerate design: {0}")]
    DegenerateDesign(String),
    #[error("too few points: {0}")]
    TooFewPoints(String),
    #[error("unbalanced design: {0}")]
    UnbalancedDesign(String),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Short variant name, e.g. `"CorruptPayload"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Format(_) => "FormatError",
            Error::CorruptPayload(_) => "CorruptPayload",
            Error::Validation(_) => "ValidationError",
            Error::Io { .. } => "IoError",
            Error::Schema(_) => "SchemaError",
            Error::Parse(_) => "ParseError",
            Error::Index(_) => "IndexError",
            Error::DegenerateVector(_) => "DegenerateVector",
            Error::Domain(_) => "DomainError",
            Error::TooFewItems(_) => "TooFewItems",
            Error::EmptyInput(_) => "EmptyInput",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::DegenerateDesign(_) => "DegenerateDesign",
            Error::TooFewPoints(_) => "TooFewPoints",
            Error::UnbalancedDesign(_) => "UnbalancedDesign",
            Error::Config(_) => "ConfigError",
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
