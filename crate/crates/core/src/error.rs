use thiserror::Error;

/// Errors raised by the library. Check failures inside reports are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("invalid modulus {0}: need an odd prime below 2^31")]
    BadModulus(u64),
    #[error("requested coefficient t^{requested} beyond truncation order {order}")]
    OrderOutOfRange { requested: usize, order: usize },
    #[error("truncation order {order} too small, need at least {needed}")]
    TruncationTooSmall { order: usize, needed: usize },
    #[error("matrix has zero determinant")]
    SingularMatrix,
    #[error("vectors do not span a subspace of the ambient space")]
    NotASubspace,
    #[error("bad exterior index: {0}")]
    BadIndex(String),
    #[error("index {index} outside [{min}, {max}]")]
    IndexOutOfRange { index: usize, min: usize, max: usize },
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),
    #[error("only {found} of {wanted} rational points found")]
    InsufficientPoints { found: usize, wanted: usize },
    #[error("unsupported genus {0}")]
    UnsupportedGenus(usize),
    #[error("closed form {0} is not an integer")]
    NonIntegerResult(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
