use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    /// An exhaustive check or construction would exceed its case budget.
    #[error("budget exceeded: {what} needs {needed} cases, limit is {limit}")]
    Budget {
        what: String,
        needed: u128,
        limit: u64,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Parse and validation failures for the text formats.
///
/// Each variant is a distinct error code; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: reference to undefined gate g{gate}")]
    UndefinedGate { line: usize, gate: u64 },
    #[error("line {line}: gate g{gate} refers to itself or to a later definition")]
    Cycle { line: usize, gate: u64 },
    #[error("line {line}: gate g{gate} is defined twice")]
    DuplicateGate { line: usize, gate: u64 },
    #[error("line {line}: more than one output statement")]
    MultipleOutputs { line: usize },
    #[error("missing output statement")]
    MissingOutput,
    #[error("line {line}: constants are not allowed in a non-canceling circuit")]
    Constant { line: usize },
    #[error("line {line}: subtraction is not allowed in a non-canceling circuit")]
    Subtraction { line: usize },
    #[error("line {line}: gate has fan-in {fan_in}, at most 2 is allowed")]
    FanIn { line: usize, fan_in: usize },
    #[error("gate g{gate} does not feed the output")]
    DanglingGate { gate: u64 },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}

impl ParseError {
    /// Stable numeric code, one per variant.
    pub fn code(&self) -> u32 {
        match self {
            ParseError::Syntax { .. } => 1,
            ParseError::UndefinedGate { .. } => 2,
            ParseError::Cycle { .. } => 3,
            ParseError::DuplicateGate { .. } => 4,
            ParseError::MultipleOutputs { .. } => 5,
            ParseError::MissingOutput => 6,
            ParseError::Constant { .. } => 7,
            ParseError::Subtraction { .. } => 8,
            ParseError::FanIn { .. } => 9,
            ParseError::DanglingGate { .. } => 10,
            ParseError::Invalid { .. } => 11,
        }
    }
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn dim(msg: impl Into<String>) -> Error {
    Error::Dimension(msg.into())
}
