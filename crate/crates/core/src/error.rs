use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    NonPrimeCharacteristic(u32),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("not a curve: {0}")]
    NotACurve(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("{0}")]
    Invalid(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
