use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid bound {bound}: must be at least {min}")]
    InvalidBound { bound: u64, min: u64 },

    #[error("{value} lies beyond the materialized bound {bound} of base set `{base}`")]
    OutOfRange {
        base: String,
        value: u64,
        bound: u64,
    },

    #[error("invalid generator {0}: generators start at 2")]
    InvalidGenerator(u64),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("base set file is empty")]
    EmptySet,

    #[error("I/O error on {path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("{x} is not a point of C({n})")]
    NotAPoint { n: u64, x: u64 },

    #[error("generator mismatch: {0} vs {1}")]
    GeneratorMismatch(u64, u64),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("unknown base set `{0}`")]
    UnknownBase(String),

    #[error("invalid figure: {0}")]
    InvalidFigure(String),
}

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidBound { .. } => "invalid-bound",
            Error::OutOfRange { .. } => "out-of-range",
            Error::InvalidGenerator(_) => "invalid-generator",
            Error::Parse { .. } => "parse",
            Error::EmptySet => "empty-set",
            Error::Io { .. } => "io",
            Error::NotAPoint { .. } => "not-a-point",
            Error::GeneratorMismatch(..) => "generator-mismatch",
            Error::InvalidQuery(_) => "invalid-query",
            Error::UnknownBase(_) => "unknown-base",
            Error::InvalidFigure(_) => "invalid-figure",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
