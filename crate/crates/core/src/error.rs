use thiserror::Error;

/// Errors raised while building or loading structures. Failed *checks* are
/// not errors; they are reported through [`crate::report::Report`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
    #[error("linear system: {0}")]
    LinearSystem(String),
    #[error("not a quantum group: {0}")]
    NotQuantumGroup(String),
    #[error("duality: {0}")]
    Duality(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
