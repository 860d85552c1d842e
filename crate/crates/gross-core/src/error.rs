use std::fmt;

/// Errors raised by grossnumber operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by the zero grossnumber.
    DivisionByZero,
    /// A root whose digit part is not an exact rational.
    InexactRoot,
    /// The operand does not have the shape the operation requires
    /// (e.g. a multi-term number where a single term is expected).
    UnsupportedShape(&'static str),
    /// Parity or integer-part queries on a value that is not an integer.
    NotInteger,
    /// An operation the extended (atom-bearing) layer refuses to perform.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InexactRoot => write!(f, "root has no exact rational digit"),
            Error::UnsupportedShape(what) => write!(f, "unsupported operand shape: {what}"),
            Error::NotInteger => write!(f, "value is not an integer"),
            Error::Unsupported(what) => write!(f, "unsupported operation: {what}"),
        }
    }
}

impl std::error::Error for Error {}
