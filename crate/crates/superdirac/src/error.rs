use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A coefficient below the truncation floor was needed.
    #[error("truncation: result needed down to λ-weight {needed}/2 but is only known from {known}/2")]
    Truncation { needed: i32, known: i32 },
    #[error("no bracket stored for generator pair ({0}, {1})")]
    UnknownPair(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operator is not in the supported invertible class: {0}")]
    NotInClass(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
