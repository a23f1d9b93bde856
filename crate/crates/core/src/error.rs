use thiserror::Error;

/// Errors raised by the exact linear algebra, lattice and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry {index} is not positive")]
    NonPositiveEntry { index: usize },
    #[error("entries are not coprime (gcd = {0})")]
    GcdNotOne(String),
    #[error("modulus {modulus} exceeds the dynamic programming cap {cap}")]
    CapExceeded { modulus: String, cap: u64 },
    #[error("condition requires m = 2, got m = {0}")]
    WrongM(usize),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
