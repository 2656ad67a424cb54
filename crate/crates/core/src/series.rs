//! Exact truncated power series and the coefficient recurrences for
//! `Q(x) = prod_{j>=1} (1 - x^j)^{-j}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Divisor sums `sigma1(k) = sum_{d|k} d` and `sigma2(k) = sum_{d|k} d^2`
/// for `k <= limit`. Index 0 holds 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorTable {
    limit: usize,
    sigma1: Vec<u64>,
    sigma2: Vec<u64>,
}

impl DivisorTable {
    pub fn new(limit: usize) -> Self {
        let mut sigma1 = vec![0u64; limit + 1];
        let mut sigma2 = vec![0u64; limit + 1];
        for d in 1..=limit {
            let d2 = (d as u64) * (d as u64);
            for k in (d..=limit).step_by(d) {
                sigma1[k] += d as u64;
                sigma2[k] += d2;
            }
        }
        DivisorTable { limit, sigma1, sigma2 }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn sigma1(&self, k: usize) -> u64 {
        self.sigma1[k]
    }

    pub fn sigma2(&self, k: usize) -> u64 {
        self.sigma2[k]
    }
}

pub fn divisor_table(limit: usize) -> DivisorTable {
    DivisorTable::new(limit)
}

/// Power series `c_0 + c_1 x + ... + c_N x^N` with exact rational
/// coefficients, known only up to order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Builds a series of the given order from leading coefficients; missing
    /// entries are zero and extra entries are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_integers(order: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        Self::from_coeffs(order, coeffs.into_iter().map(BigRational::from_integer))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every denominator is 1.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Restriction to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: order });
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let (a, da) = self.scaled_to_integers();
        let (b, db) = other.scaled_to_integers();
        let prod = convolve(&a, &b, self.order());
        let denom = da * db;
        Ok(TruncatedSeries { coeffs: prod.into_iter().map(|c| BigRational::new(c, denom.clone())).collect() })
    }

    /// Multiplies by `(1 - x^j)^e` for any integer `e`.
    pub fn binomial_factor(&self, j: usize, e: i64) -> Self {
        assert!(j >= 1, "binomial factor needs j >= 1");
        let n = self.order();
        let (ints, denom) = self.scaled_to_integers();
        let out = apply_binomial(ints, j, e, n);
        TruncatedSeries { coeffs: out.into_iter().map(|c| BigRational::new(c, denom.clone())).collect() }
    }

    /// Coefficients times the lcm of their denominators, and that lcm.
    fn scaled_to_integers(&self) -> (Vec<BigInt>, BigInt) {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self.coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        (ints, l)
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

pub fn series_binomial_factor(base: &TruncatedSeries, j: usize, e: i64) -> TruncatedSeries {
    base.binomial_factor(j, e)
}

/// Integer Cauchy product truncated at `order`.
pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (k, bk) in b.iter().enumerate().take(order + 1 - i) {
            if !bk.is_zero() {
                out[i + k] += ai * bk;
            }
        }
    }
    out
}

/// `c * (1 - x^j)^e` on integer coefficients, truncated at `order`.
pub(crate) fn apply_binomial(mut c: Vec<BigInt>, j: usize, e: i64, order: usize) -> Vec<BigInt> {
    if e == 0 || j > order {
        return c;
    }
    let reps = e.unsigned_abs();
    let terms = (order / j) as u64;
    if reps <= terms {
        // repeated single-factor passes
        for _ in 0..reps {
            if e > 0 {
                for i in (j..=order).rev() {
                    let t = c[i - j].clone();
                    c[i] -= t;
                }
            } else {
                for i in j..=order {
                    let t = c[i - j].clone();
                    c[i] += t;
                }
            }
        }
        return c;
    }
    // explicit binomial coefficients of (1 - y)^e, y = x^j
    let mut factor = Vec::with_capacity(terms as usize + 1);
    let mut coef = BigInt::one();
    factor.push(coef.clone());
    for t in 1..=terms {
        let t_big = BigInt::from(t);
        coef = if e > 0 {
            -(coef * BigInt::from(e - t as i64 + 1)) / t_big
        } else {
            coef * BigInt::from(reps + t - 1) / t_big
        };
        factor.push(coef.clone());
    }
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (t, f) in factor.iter().enumerate() {
            let k = i + t * j;
            if k > order {
                break;
            }
            out[k] += ci * f;
        }
    }
    out
}

/// `q(0), ..., q(order)` as integers, via `n q(n) = sum_k sigma2(k) q(n-k)`.
pub fn q_coefficients(order: usize) -> Vec<BigInt> {
    let table = DivisorTable::new(order);
    let mut q: Vec<BigInt> = Vec::with_capacity(order + 1);
    q.push(BigInt::one());
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            acc += &q[n - k] * table.sigma2(k);
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(n));
        debug_assert!(rem.is_zero(), "q recurrence not integral at n={n}");
        q.push(quot);
    }
    q
}

/// Coefficients of `Q(x)` up to `order`.
pub fn q_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers(order, q_coefficients(order))
}

/// `Q(x)` expanded factor by factor; an independent route to `q_series`.
pub fn q_series_by_product(order: usize) -> TruncatedSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for j in 1..=order {
        c = apply_binomial(c, j, -(j as i64), order);
    }
    TruncatedSeries::from_integers(order, c)
}

/// Integer coefficients of `F_1(x) = sum_j j x^j / (1 - x^j)`, i.e. `sigma1(k)`.
pub fn f1_series(order: usize) -> TruncatedSeries {
    let t = DivisorTable::new(order);
    TruncatedSeries::from_integers(order, (0..=order).map(|k| BigInt::from(t.sigma1(k))))
}
