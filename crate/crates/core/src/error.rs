use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order must be positive")]
    ZeroOrder,

    #[error("cannot differentiate a series of order 0")]
    DerivativeOfOrderZero,

    #[error("coefficient index {index} outside 1..={order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("need coefficients up to n = {needed}, series has order {available}")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("brute-force enumeration is capped at n <= {cap}, got n = {n}")]
    EnumerationTooLarge { n: usize, cap: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid part multiset: {0}")]
    InvalidMultiset(String),

    #[error("n * g(n) is not an integer at n = {n} (got {value}); arithmetic is inconsistent")]
    NonIntegral { n: usize, value: String },

    #[error("integrality property violated at n = {n}: {value} is not an integer")]
    PropertyViolation { n: usize, value: String },

    #[error("witness requires n >= 2, got {0}")]
    NTooSmall(u64),

    #[error(
        "n = {n} exceeds the exact binomial bound {bound}; no modular path for C(2n-1, n-1) is provided"
    )]
    BinomialBoundExceeded { n: u64, bound: u64 },

    #[error("invalid scan range [{lo}, {hi}]")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("thread pool: {0}")]
    ThreadPool(String),
}
