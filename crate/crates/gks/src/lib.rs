//! Driver layer over `gks-core`: golden data, DSL contexts, suites and reports.

pub mod cli;
pub mod context;
pub mod golden;
pub mod json;
pub mod report;
pub mod suite;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("{0}")]
    Engine(gks_core::Error),
}

impl AppError {
    /// 2 for usage and parse errors, 3 for resource limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) | AppError::Parse(_) => 2,
            AppError::Resource(_) => 3,
            AppError::Engine(_) => 1,
        }
    }
}

impl From<gks_core::Error> for AppError {
    fn from(e: gks_core::Error) -> Self {
        match e {
            gks_core::Error::Resource { .. } => AppError::Resource(e.to_string()),
            gks_core::Error::Parse(p) => AppError::Parse(p.to_string()),
            e => AppError::Engine(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, AppError>;

/// Parse one DSL expression, rendering errors against the source.
pub fn parse(src: &str, ctx: &gks_core::parse::ParseContext) -> Result<gks_core::Expr> {
    gks_core::parse::parse_expr(src, ctx).map_err(|e| AppError::Parse(e.render(src)))
}
