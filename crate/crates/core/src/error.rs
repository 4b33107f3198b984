use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("move {kind} does not apply at site {site} of `{word}`")]
    MoveInapplicable { kind: String, site: usize, word: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// The connecting-map graph has a directed cycle; the witness lists vertex
    /// indices with the first vertex repeated at the end.
    #[error("connecting-map graph has a cycle: {0:?}")]
    CycleDetected(Vec<usize>),

    /// An internal consistency check failed, such as `d ∘ d ≠ 0`.
    #[error("internal check failed: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
