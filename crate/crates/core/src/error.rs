use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("inexact polynomial division by (1 - x^{divisor_power})")]
    InexactDivision { divisor_power: usize },

    #[error("{what} = {value} outside supported range [{min}, {max}]")]
    OutOfRange { what: &'static str, value: i64, min: i64, max: i64 },

    #[error("{op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("invalid axis permutation {0:?}")]
    InvalidPermutation([usize; 3]),

    #[error("{what} did not converge: {detail}")]
    Convergence { what: &'static str, detail: String },

    #[error("summation cutoff {cutoff} too small: tail term {tail} exceeds {tolerance}")]
    CutoffNotReached { cutoff: usize, tail: String, tolerance: String },

    #[error("cannot parse decimal literal {0:?}")]
    Parse(String),
}

impl Error {
    pub(crate) fn range(what: &'static str, value: impl TryInto<i64>, min: i64, max: i64) -> Self {
        Error::OutOfRange { what, value: value.try_into().unwrap_or(i64::MAX), min, max }
    }
}
