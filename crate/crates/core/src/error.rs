use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system {0}")]
    Unsupported(String),
    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("normalisation vanishes: some coroot pairs to -1 with the parameter")]
    ZeroNormalization,
    #[error("parameter is not hermitian (w0 chi != -chi)")]
    NotHermitian,
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("unknown W-type label {0}")]
    UnknownLabel(String),
    #[error("parameter attaches to a very even orbit")]
    VeryEvenOrbit,
    #[error("invalid distinguished string: {0}")]
    InvalidDistinguished(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unknown orbit {0}")]
    UnknownOrbit(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("pole: a denominator vanishes")]
    Pole,
    #[error("coroot has non-integral coordinates in the lattice basis")]
    NonIntegralCoroot,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
