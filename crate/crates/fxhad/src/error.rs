//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("field size {q} exceeds the table budget 2^26")]
    FieldTooLarge { q: u64 },
    #[error("discrete log of zero is undefined")]
    DlogOfZero,
    #[error("inverse of zero is undefined")]
    InverseOfZero,
    #[error("incompatible field degrees: {small} does not divide {big}")]
    IncompatibleDegrees { small: u32, big: u32 },
    #[error("conductor {src} does not divide conductor {dst}")]
    ConductorMismatch { src: usize, dst: usize },
    #[error("ring element is not a rational integer")]
    NotRationalInteger,
    #[error("operation requires exact (non-modular) coefficients")]
    RequiresExactMode,
    #[error("modulus must be at least 2")]
    BadRingModulus,
    #[error("galois exponent {a} is not coprime to conductor {n}")]
    BadGaloisExponent { a: i64, n: usize },
    #[error("{order} does not divide the group order {group}")]
    OrderDoesNotDivide { order: u64, group: u64 },
    #[error("construction hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("hypotheses violated: {0:?}")]
    Hypotheses(Vec<String>),
    #[error("gcd({a}, {n}) != 1")]
    NotCoprime { a: u64, n: u64 },
    #[error("no (b, c) solution for 4*p^h = b^2 + p1*c^2")]
    NoIndex2Solution,
    #[error("modulus {m} must be odd and coprime to 2*p1")]
    BadLiftModulus { m: u64 },
    #[error("brute-force budget exceeded (q = {q})")]
    BudgetExceeded { q: u64 },
    #[error("shift x = 0 is not allowed")]
    ZeroShift,
    #[error("parameter a must avoid {{0, 1}}")]
    BadTripleShift,
    #[error("q = {q} is not congruent to 3 mod 4")]
    NotThreeModFour { q: u64 },
    #[error("invalid index-set expression: {0}")]
    IndexSetParse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
