use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree {0} unsupported (need 1..=4)")]
    UnsupportedDegree(u32),
    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,
    #[error("invalid block profile: {0}")]
    InvalidProfile(String),
    #[error("minimum distance {d} out of range 1..={max}")]
    DistanceOutOfRange { d: u32, max: u32 },
    #[error("blocks must satisfy n_i <= m_i (block {index} is {rows}x{cols})")]
    TransposedBlock { index: usize, rows: u32, cols: u32 },
    #[error("enumeration of {requested} elements exceeds cap {cap}")]
    CapExceeded { requested: String, cap: u64 },
    #[error("expression does not evaluate to an integer: {0}")]
    NotIntegral(String),
    #[error("no closed form for q={q}, radius {l}")]
    NoClosedForm { q: u32, l: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("basis not independent")]
    DependentBasis,
    #[error("malformed generator file: {0}")]
    MalformedGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
