use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}: zero input")]
    ZeroInput(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid braiding: {0}")]
    InvalidBraiding(String),
    #[error("position {position} out of range for degree {degree}")]
    PositionOutOfRange { position: usize, degree: usize },
    #[error("index {0} must differ from {1}")]
    SameIndex(usize, usize),
    #[error("operation requires a diagonal braiding")]
    NotDiagonal,
    #[error("Cartan integer c_{{{i}{j}}} undefined within scan bound {cap}")]
    UndefinedCartanInteger { i: usize, j: usize, cap: u32 },
    #[error("root system is not known to be finite")]
    InfiniteRootSystem,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
