use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ideal is not admissible within truncation bound {bound}: {reason}")]
    NotAdmissible { bound: usize, reason: String },

    #[error("malformed relation: {0}")]
    MalformedRelation(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("{0} is not a prime below 65536")]
    BadPrime(u32),

    #[error("image is not a submodule: {0}")]
    NotASubmodule(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("isomorphism test inconclusive: {0}")]
    Inconclusive(String),

    #[error("registry ambiguity: {0}")]
    RegistryAmbiguity(String),

    #[error("H3 violation: {0} survives in the glued algebra")]
    H3Violation(String),

    #[error("syzygy split failure: {0}")]
    SplitFailure(String),

    #[error("operation requires the generated ideal mode: {0}")]
    ModeError(String),

    #[error("not decidable with the available certificates: {0}")]
    NotDecidable(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
