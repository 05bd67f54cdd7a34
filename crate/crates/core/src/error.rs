use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring must have at least one variable")]
    EmptyRing,
    #[error("weight of variable `{name}` must be positive")]
    NonPositiveWeight { name: String },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("polynomial `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("the ideal is the whole ring")]
    UnitIdeal,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("exponent must be at least {min}, got {got}")]
    ExponentTooSmall { min: usize, got: usize },
    #[error("homological degree {0} has no differential")]
    NoDifferential(usize),
    #[error("element is not a cycle")]
    NotACycle,
    #[error("element is not homogeneous")]
    InhomogeneousElement,
    #[error("resolution does not resolve the given ideal")]
    ResolutionMismatch,
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
