use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field tag {0} is not a squarefree integer other than 0 and 1")]
    InvalidFieldTag(i64),
    #[error("leading coefficient is zero; series is not invertible")]
    NonInvertibleLeadingTerm,
    #[error("truncation window is empty")]
    EmptyWindow,
    #[error("operator needs an integer-exponent series")]
    FractionalGrid,
    #[error("character parity does not match theta index {0}")]
    ParityMismatch(u8),
    #[error("chi(-1)psi(-1) != (-1)^k for weight {0}")]
    ParityObstruction(u32),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("delta {delta} does not divide level {level}")]
    DeltaNotDividingLevel { delta: u64, level: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown id: {0}")]
    UnknownId(String),
    #[error("recipe evaluation failed: {0}")]
    RecipeEvaluation(String),
    #[error("resource budget exceeded: {0}")]
    ResourceBudgetExceeded(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
