use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("{0} is not a prime below 2^63")]
    NotPrime(u64),
    #[error("modulus {0} is below 2^30; use an explicit override for small primes")]
    ModulusTooSmall(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ineffective class: no sections of the requested divisor class")]
    IneffectiveClass,
    #[error("degenerate class: divisors in this class lie in a hyperplane")]
    DegenerateClass,
    #[error("singular curve data: {0}")]
    SingularCurve(String),
    #[error("projection center lies on the variety")]
    CenterOnVariety,
    #[error("spurious quadric: sampled kernel vector does not vanish on the variety: {vector:?}")]
    SpuriousQuadric { vector: Vec<String> },
    #[error("retries exhausted: {0}")]
    RetriesExhausted(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = CoreError> = core::result::Result<T, E>;
