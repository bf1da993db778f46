use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("twist vector has length {got}, expected {expected} (one entry per n2)")]
    TwistLength { expected: usize, got: usize },

    #[error("n1 and n2 must both be at least 1 (got n1={n1}, n2={n2})")]
    Dimension { n1: u32, n2: u32 },

    #[error("hypersurface is not spin: d1={d1}, d2={d2} violate the parity conditions")]
    NotSpin { d1: i64, d2: i64 },

    #[error("{context}: expected an integer, got {value}")]
    IntegralityViolation {
        context: &'static str,
        value: BigRational,
    },

    #[error("closed form does not apply: {0}")]
    WrongShape(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
