use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{q_coefficients, DivisorTable};

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::range("n", n, 1, i64::MAX));
    }
    Ok(())
}

/// `[x^n] Q(x) F_1(x)` for `n = 0..=order`, i.e. `q(n) E(T_n)`.
pub fn trace_numerators(order: usize) -> Vec<BigInt> {
    let q = q_coefficients(order);
    let t = DivisorTable::new(order);
    (0..=order).map(|n| (1..=n).fold(BigInt::zero(), |acc, k| acc + &q[n - k] * t.sigma1(k))).collect()
}

/// Exact mean trace of a uniformly random plane partition of `n`.
pub fn expected_trace(n: usize) -> Result<BigRational> {
    check_n(n)?;
    let num = trace_numerators(n);
    let q = q_coefficients(n);
    Ok(BigRational::new(num[n].clone(), q[n].clone()))
}

/// Exact law of the trace over plane partitions of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceDistribution {
    pub n: usize,
    /// `m -> P(T_n = m)` for `m = 1..=n`; zero entries are kept.
    pub probs: BTreeMap<usize, BigRational>,
}

impl TraceDistribution {
    pub fn total(&self) -> BigRational {
        self.probs.values().fold(BigRational::zero(), |a, p| a + p)
    }

    pub fn mean(&self) -> BigRational {
        self.probs.iter().fold(BigRational::zero(), |a, (&m, p)| a + p * BigRational::from_integer(m.into()))
    }
}

/// Coefficients of `u^m x^n` in `prod_j (1 - u x^j)^{-j}` for `n <= order`,
/// indexed `[n][m]`.
pub fn trace_counts(order: usize) -> Vec<Vec<BigInt>> {
    let mut poly: Vec<Vec<BigInt>> = (0..=order).map(|k| vec![BigInt::zero(); k + 1]).collect();
    poly[0][0] = BigInt::one();
    for j in 1..=order {
        // (1 - u x^j)^{-j} = sum_t C(j+t-1, t) u^t x^{jt}
        let tmax = order / j;
        let mut binom = Vec::with_capacity(tmax + 1);
        let mut c = BigInt::one();
        binom.push(c.clone());
        for t in 1..=tmax {
            c = c * BigInt::from(j + t - 1) / BigInt::from(t);
            binom.push(c.clone());
        }
        for k in (j..=order).rev() {
            let (lower, upper) = poly.split_at_mut(k);
            let target = &mut upper[0];
            for (t, b) in binom.iter().enumerate().skip(1) {
                if t * j > k {
                    break;
                }
                for (m, v) in lower[k - t * j].iter().enumerate() {
                    if !v.is_zero() {
                        target[m + t] += v * b;
                    }
                }
            }
        }
    }
    poly
}

pub fn trace_distribution(n: usize) -> Result<TraceDistribution> {
    check_n(n)?;
    let counts = trace_counts(n);
    let total: BigInt = counts[n].iter().sum();
    let probs = (1..=n).map(|m| (m, BigRational::new(counts[n][m].clone(), total.clone()))).collect();
    Ok(TraceDistribution { n, probs })
}
