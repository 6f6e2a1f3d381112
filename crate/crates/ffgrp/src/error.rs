//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by field construction, polynomial algebra, group
/// enumeration and bound evaluation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("magnitude cap exceeded: {0}")]
    CapExceeded(String),
    #[error("multiplicative order of zero is undefined")]
    ZeroElement,
    #[error("no embedding F_{{{p}^{k}}} -> F_{{{p2}^{l}}}")]
    NoEmbedding { p: u64, k: u32, p2: u64, l: u32 },
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("irreducibility is only defined for positive degree")]
    NotAPolynomialOfPositiveDegree,
    #[error("matrix is singular")]
    NotInvertible,
    #[error("maximal-order witness in characteristic 2 is covered by the projective construction")]
    EvenCharacteristicUnsupported,
    #[error("sharpness violated: {0}")]
    SharpnessViolation(String),
    #[error("too many conjugacy classes for lattice enumeration: {0}")]
    TooManyClasses(usize),
    #[error("unknown group spec: {0}")]
    UnknownGroup(String),
    #[error("subgroup fits no classification label (order {0})")]
    ClassificationGap(u64),
    #[error("normal abelian index bound violated: {0}")]
    BoundViolation(String),
    #[error("{0} is not a prime power")]
    InvalidQ(u64),
    #[error("bound inconsistency: {0}")]
    BoundInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}
