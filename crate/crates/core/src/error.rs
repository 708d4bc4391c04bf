use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exact arithmetic overflowed the coefficient range")]
    Overflow,
    #[error("phase class of zero is undefined")]
    ZeroPhase,
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("enumeration is incomplete")]
    IncompleteEnumeration,
    #[error("S_U failed the symplectic relation")]
    NotSymplectic,
    #[error("invalid fusion label: {0}")]
    InvalidLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
