use thiserror::Error;

#[derive(Debug, Error)]
pub enum GcxError {
    #[error("unknown complex kind `{0}`")]
    UnknownKind(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("differential produced a term missing from the codomain basis: {0}")]
    MissingCodomainTerm(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("composite differential is nonzero (d^2 != 0)")]
    NonzeroComposite,
    #[error("modular rank could not be certified")]
    Uncertified,
    #[error("not a character: subtraction of irreducibles went negative at weight {0:?}")]
    NotACharacter(Vec<i32>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}
