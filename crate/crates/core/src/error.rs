use alloc::string::String;
use core::fmt;

/// Crate-wide error type. Variants carry enough context to map onto CLI
/// exit codes (cap violations vs. bad input vs. internal check failure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Cartan matrix failed a structural invariant.
    InvalidCartan(String),
    /// Root closure did not terminate within the positive-root cap.
    NotFiniteType,
    /// A configured cap was exceeded.
    CapExceeded { what: &'static str, limit: u128, requested: u128 },
    /// Vector is not (plus or minus) a root of the datum.
    NotARoot,
    /// A precondition on operation arguments was violated.
    Precondition(String),
    /// Vector lies outside the span the expansion is defined on.
    NotInSpan,
    /// An exact computation overflowed the fixed-width integer types.
    Overflow(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCartan(msg) => write!(f, "invalid Cartan matrix: {msg}"),
            Error::NotFiniteType => write!(f, "not finite type"),
            Error::CapExceeded { what, limit, requested } => {
                write!(f, "cap exceeded for {what}: limit {limit}, requested {requested}")
            }
            Error::NotARoot => write!(f, "vector is not a root"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::NotInSpan => write!(f, "vector outside the expected span"),
            Error::Overflow(what) => write!(f, "integer overflow in {what}"),
        }
    }
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
