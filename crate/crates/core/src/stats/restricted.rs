use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::{apply_binomial, TruncatedSeries};

/// Integer coefficients of `prod_{j<=order} (1 - x^j)^{-min(j, m)}`.
pub(crate) fn restricted_coefficients(m: usize, order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    if m == 0 {
        return c;
    }
    for j in 1..=order {
        c = apply_binomial(c, j, -(j.min(m) as i64), order);
    }
    c
}

/// Generating function of plane partitions with largest part at most `m`.
pub fn restricted_q_series(m: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers(order, restricted_coefficients(m, order))
}

/// Plane partitions with at most `a` rows and at most `b` columns (or any two
/// of the three dimensions bounded): `prod_{i<=a, j<=b} (1 - x^{i+j-1})^{-1}`.
pub(crate) fn two_sided_coefficients(a: usize, b: usize, order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for i in 1..=a {
        for j in 1..=b {
            c = apply_binomial(c, i + j - 1, -1, order);
        }
    }
    c
}
