use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("inconsistent ideal map: {0}")]
    Classification(String),

    #[error("cannot build space: {0}")]
    Construction(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a finite-complex cohomology module: {0}")]
    NotFiniteComplexModule(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("inconsistent invariants: {0}")]
    InconsistentInvariants(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
