use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not monic and irreducible over GF({p})")]
    Reducible { p: u64 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {needed} exceeds limit {limit}")]
    Budget { needed: u128, limit: u128 },
    #[error("polynomial is derogatory (coefficient sum is zero)")]
    Derogatory,
    #[error("characteristic polynomial does not split over the working field")]
    NotSplit,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a rank-one matrix, found rank {0}")]
    RankNotOne(usize),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
