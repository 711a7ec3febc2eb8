use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus {0}: must be a prime below 2^31")]
    InvalidModulus(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group generated by the given matrices exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("representation error: {0}")]
    Representation(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("lambda is not well defined: condition (1) fails at g={g}, h={h}, v={v}")]
    LambdaInconsistent { g: usize, h: usize, v: usize },
    #[error("enumeration error: {0}")]
    Enumeration(String),
    #[error("characteristic {characteristic} divides the group order {order}")]
    Modular { characteristic: u64, order: usize },
    #[error("reduction system is not confluent")]
    NotConfluent,
    #[error("homogeneity violated: {0}")]
    Homogeneity(String),
    #[error("evaluation outside the generator slice: {0}")]
    SliceViolation(String),
    #[error("outside implemented range: {0}")]
    OutOfRange(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown corpus entry '{name}'; available: {available}")]
    UnknownCorpus { name: String, available: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
