use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field degree {0} out of range (supported: 1..=32)")]
    DegreeOutOfRange(u32),

    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {m}")]
    ReducibleModulus { m: u32, modulus: u64 },

    #[error("element {bits:#x} does not fit in GF(2^{m})")]
    ElementOutOfRange { m: u32, bits: u64 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("operation is undefined for the zero element")]
    ZeroInput,

    #[error("alpha must be nonzero")]
    ZeroAlpha,

    #[error("k = {k} is not coprime to m = {m}")]
    InvalidK { k: i64, m: u32 },

    #[error("set is not closed under the Frobenius map: {0:#x} squared is missing")]
    NotFrobeniusClosed(u32),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("function is not APN: {0}")]
    NotApn(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("orbit count N({m})/{m} = {n}/{m} is not integral")]
    NonIntegralOrbitCount { m: u32, n: u128 },

    #[error("arithmetic overflow computing {0}")]
    Overflow(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
