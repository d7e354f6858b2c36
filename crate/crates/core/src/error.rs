use thiserror::Error;

/// Everything that can go wrong while building fields, codes, or decoders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field order {p}^{k} exceeds the configured bound of {bound} elements")]
    FieldTooLarge { p: u32, k: u32, bound: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} does not belong to GF({q})")]
    ForeignElement { value: u32, q: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular system: {0}")]
    Singular(String),
    #[error("enumeration of {count} items exceeds the bound of {bound}")]
    EnumerationBound { count: u128, bound: u128 },
    /// Generator numbers are 1-based, in input order.
    #[error("generators {0} and {1} do not commute (alternating product {2})")]
    NonCommuting(usize, usize, u32),
    #[error("generator set is linearly dependent")]
    Dependent,
    /// Row numbers are 1-based.
    #[error("C ⊄ (C^{{p^m}})^⊥: generator rows {0} and {1} pair to a nonzero value")]
    NotSelfOrthogonal(usize, usize),
    #[error("decoder cannot be used with this code: {0}")]
    IncompatibleDecoder(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    /// Exit-code class: 2 for mathematical precondition failures, 3 for resource bounds.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::FieldTooLarge { .. } | Error::EnumerationBound { .. } => 3,
            Error::Parse { .. } | Error::InvalidArgument(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
