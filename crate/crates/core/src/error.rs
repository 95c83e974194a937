use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^16")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("cannot parse group descriptor {input:?} at position {position}: {message}")]
    Descriptor {
        input: String,
        position: usize,
        message: String,
    },

    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("{0}")]
    NotAPGroup(String),

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("entry {entry} does not define a map {source_coset} -> {target_coset}")]
    IllDefinedEntry {
        entry: String,
        source_coset: String,
        target_coset: String,
    },

    #[error("invalid complex at degree {degree}: {message}")]
    InvalidComplex { degree: i32, message: String },

    #[error("invalid chain map at degree {degree}: {message}")]
    InvalidChainMap { degree: i32, message: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
