use thiserror::Error;

/// Everything that can go wrong while building root data, words or divisors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cartan matrix is not square")]
    NonSquare,
    #[error("cartan matrix is empty")]
    EmptyMatrix,
    #[error("diagonal entry A[{i}][{i}] is {value}, expected 2")]
    DiagonalNotTwo { i: usize, value: i64 },
    #[error("off-diagonal entry A[{i}][{j}] = {value} is positive")]
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("A[{i}][{j}] and A[{j}][{i}] must vanish together")]
    AsymmetricZeroPattern { i: usize, j: usize },
    #[error("unknown cartan type {0:?}")]
    UnknownType(String),
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: String, rank: usize },
    #[error("node index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("M = {m} must exceed every Schubert coefficient (max a = {max_a})")]
    MTooSmall { m: i64, max_a: i64 },
    #[error("divisor has {got} coefficients, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0} is not a positive root")]
    NotPositiveRoot(String),
    #[error("cartan matrix is not of finite type; an element cap is required")]
    NotFiniteType,
    #[error("enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("integer overflow in root arithmetic")]
    Overflow,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
