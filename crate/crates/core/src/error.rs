use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("partition has a negative part: {0:?}")]
    NegativePart(Vec<i64>),
    #[error("signature lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("infinite q-Pochhammer requires |t| < 1, got {0}")]
    DivergentProduct(f64),
    #[error("partition of length {len} does not fit in {n} variables")]
    TooManyParts { len: usize, n: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("series did not converge after {terms} terms")]
    SeriesNonConvergence { terms: usize },
    #[error("quadrature did not converge: estimate {estimate}, refinement difference {difference}")]
    QuadratureNonConvergence { estimate: f64, difference: f64 },
    #[error("moment window exhausted at |x| = {0}")]
    WindowExhausted(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {p}^{k} exceeds supported 127-bit range")]
    ModulusTooLarge { p: u64, k: u32 },
    #[error("no invertible matrix after {0} attempts")]
    RejectionBudget(usize),
    #[error("saturated sample: singular numbers reached precision K = {0}")]
    Saturated(u32),
    #[error("surrogate certification failed: D_inf {dinf} exceeds {bound}")]
    CertificationFailed { dinf: f64, bound: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("support cap {0} exceeded")]
    SupportOverflow(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
