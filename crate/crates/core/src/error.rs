use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("operands live in different polynomial rings")]
    RingMismatch,

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),

    #[error("{what} exceeded its bound of {limit}")]
    BoundExceeded { what: &'static str, limit: u64 },

    #[error("the algebra is infinite dimensional (variable `{0}` is not nilpotent)")]
    InfiniteDimensional(String),

    #[error("height of the presentation exceeds r = {r}")]
    HeightExceeds { r: u32 },

    #[error("basis is not closed under the coaction: {0}")]
    NotClosed(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn bound(what: &'static str, limit: impl TryInto<u64>) -> Self {
        Error::BoundExceeded {
            what,
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
