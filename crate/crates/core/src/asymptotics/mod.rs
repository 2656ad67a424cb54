//! Saddle-point asymptotics for `Q(x) = prod_j (1 - x^j)^{-j}` at `x = e^{-d}`.
//!
//! Every infinite sum is cut off once a geometric bound on its tail drops
//! below `10^{-(digits+5)}` of the running total, and the cutoff index is
//! returned alongside the value.

mod constants;
mod estimates;
mod lambert;
mod probe;
mod saddle;

use std::sync::{Arc, RwLock};

pub use constants::{bernoulli, zeta3, zeta_prime_minus_one, Constants};
pub use estimates::{F2Evaluation, MeanSaddleRatio, Statistic, F2_TAIL_TOLERANCE};
pub use probe::{ProbePoint, ProbeReport};
pub use saddle::{DnInverse, SaddlePoint};

use crate::bigfloat::{BigFloat, Precision};
use crate::error::{Error, Result};
use crate::series::DivisorTable;

/// Smallest working precision, in decimal digits.
pub const MIN_DIGITS: u32 = 30;

/// A truncated infinite sum and the last index included.
#[derive(Clone, Debug)]
pub struct Truncated {
    pub value: BigFloat,
    pub cutoff: usize,
}

/// Evaluation context: precision, constants and a shared divisor-sum cache.
#[derive(Debug)]
pub struct Asymptotics {
    precision: Precision,
    bits: u32,
    constants: Constants,
    divisors: RwLock<Arc<DivisorTable>>,
}

impl Asymptotics {
    pub fn new(precision: Precision) -> Result<Self> {
        let digits = precision.decimal_digits();
        if digits < MIN_DIGITS {
            return Err(Error::range("precision", digits, i64::from(MIN_DIGITS), i64::from(u32::MAX)));
        }
        let bits = precision.bits();
        Ok(Asymptotics {
            precision,
            bits,
            constants: Constants::new(bits),
            divisors: RwLock::new(Arc::new(DivisorTable::new(1024))),
        })
    }

    pub fn with_digits(digits: u32) -> Result<Self> {
        Self::new(Precision::digits(digits))
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    /// Working-precision value of an integer.
    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.bits)
    }

    pub fn frac(&self, p: i64, q: i64) -> BigFloat {
        BigFloat::from_fraction(p, q, self.bits)
    }

    /// A divisor table covering at least `limit`.
    fn divisors(&self, limit: usize) -> Arc<DivisorTable> {
        {
            let t = self.divisors.read().expect("divisor cache poisoned");
            if t.limit() >= limit {
                return Arc::clone(&t);
            }
        }
        let mut t = self.divisors.write().expect("divisor cache poisoned");
        if t.limit() < limit {
            *t = Arc::new(DivisorTable::new(limit.max(2 * t.limit())));
        }
        Arc::clone(&t)
    }

    fn check_d(&self, op: &'static str, d: &BigFloat) -> Result<BigFloat> {
        if !d.is_positive() {
            return Err(Error::Domain { op, detail: format!("d must be positive, got {d}") });
        }
        Ok(d.with_bits(self.bits))
    }

    /// `ln(10^{-(digits+5)})`, the relative tail target of every sum.
    fn log_tolerance(&self) -> f64 {
        -(f64::from(self.precision.decimal_digits()) + 5.0) * std::f64::consts::LN_10
    }
}
