use thiserror::Error;

/// Errors raised by ring construction and the structural scans.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unsupported modulus: {0}")]
    UnsupportedModulus(String),
    #[error("ring of size {size} exceeds the cap of {cap} elements")]
    TooLarge { size: usize, cap: usize },
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("invalid quotient: {0}")]
    InvalidQuotient(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("generators do not generate the source ring ({generated} of {size} elements reached)")]
    NotGenerating { generated: usize, size: usize },
    #[error("ideal is not semiprime: {0}")]
    NotSemiprime(String),
    #[error("base ring is not a field")]
    BaseNotField,
    #[error("polynomial is reducible modulo the maximal ideal: {0}")]
    ReducibleImage(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("2 is not a primitive root modulo {0}")]
    NotPrimitive(u64),
    #[error("not an inclusion: {0}")]
    NotAnInclusion(String),
    #[error("scan population {population} exceeds the cap of {cap}")]
    CapExceeded { population: u128, cap: u128 },
    #[error("finding: {0}")]
    Finding(String),
}

pub type Result<T> = std::result::Result<T, RingError>;
