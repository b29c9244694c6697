use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit width {0} out of range 1..=62")]
    InvalidBitWidth(u32),

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("value {value} out of domain for d={d}")]
    ValueOutOfDomain { value: u64, d: u32 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("oracle limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
