use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: String, limit: u64 },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("relator {index} is not satisfied: {detail}")]
    RelatorViolation { index: usize, detail: String },
    #[error("singular matrix")]
    Singular,
    #[error("degree bound {bound} exceeded (expression has degree {degree})")]
    DegreeBound { bound: u32, degree: u32 },
    #[error("incomplete coset table")]
    IncompleteTable,
    #[error("not found: {0}")]
    NotFound(String),
    #[error("certificate refused: {0}")]
    Certificate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn budget(what: impl Into<String>, limit: u64) -> Self {
        Error::Budget { what: what.into(), limit }
    }
}
