use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank n = {n} is below the minimum of 2")]
    RankTooSmall { n: usize },

    #[error("{what} = {value} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("[{p},{q}] is not a positive coroot for n = {n}")]
    InvalidInterval { p: usize, q: usize, n: usize },

    #[error("expected {expected} coefficients, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("multiplicities do not partition the given weight: {0}")]
    InvalidPartition(String),

    #[error("triangle is not in M(gamma): {0}")]
    NotInM(String),

    #[error("triangle kind mismatch: expected {expected}, got {got}")]
    KindMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid stratum: {0}")]
    InvalidStratum(String),

    #[error("q = {0} is not a prime")]
    NotPrime(u64),

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("submodule is not of full rank below truncation z^{truncation}")]
    Truncation { truncation: usize },

    #[error("flag matrix is not invertible over F_{0}")]
    SingularMatrix(u32),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
