use alloc::string::String;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("expression size {nodes} exceeds limit {limit}")]
    Resource { nodes: usize, limit: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("structural error: {0}")]
    Structural(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;
