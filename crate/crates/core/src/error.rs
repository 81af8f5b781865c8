use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("polynomial is not homogeneous of degree {expected}: found a term of degree {found}")]
    Inhomogeneous { expected: u32, found: u32 },

    #[error("variable family mismatch: expected '{expected}' variables, found '{found}'")]
    WrongFamily { expected: char, found: char },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("characteristic {characteristic} too small: need p > {required}")]
    CharacteristicTooSmall { characteristic: u64, required: u64 },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("zero polynomial rejected: {0}")]
    ZeroPolynomial(String),

    #[error("not smooth: {0}")]
    NotSmooth(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unexpected dimension: {what} has dimension {found}, expected {expected}")]
    UnexpectedDimension {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("value not representable in the field: {0}")]
    NotRepresentable(String),

    #[error("point-set format error on line {line}: {message}")]
    PointFormat { line: usize, message: String },

    #[error("cannot read input: {0}")]
    Io(String),

    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
