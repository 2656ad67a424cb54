//! Exact mean of the largest part (equivalently, of the row or column count).
//!
//! `q(n) E(W_n) = [x^n] Q(x) F_2(x)` with `F_2 = sum_m (1 - P_m)` and
//! `P_m = prod_{j>m} (1 - x^j)^{j-m}`. The coefficients of `F_2` are found
//! modulo several word-sized primes and recombined, using
//! `|[x^k] F_2| <= k q(k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::restricted::restricted_q_series;
use super::trace::check_n;
use crate::error::Result;
use crate::series::q_coefficients;

/// Primes used for the residue computation stay below this, so a product of
/// two residues fits in 100 bits and `2^28` of them fit in a `u128`.
const PRIME_CEILING: u64 = 1 << 50;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all `u64`.
pub(crate) fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `[x^k] F_2 mod p` for `k = 0..=order`.
fn f2_mod(order: usize, p: u64) -> Vec<u64> {
    let n = order;
    // e = E_m = prod_{j>m}(1 - x^j), pp = P_m, built downward from m = n
    let mut e = vec![0u64; n + 1];
    let mut pp = vec![0u64; n + 1];
    let mut f2 = vec![0u64; n + 1];
    e[0] = 1;
    pp[0] = 1;
    let mut next = vec![0u64; n + 1];
    for m in (0..n).rev() {
        let j = m + 1;
        for k in (j..=n).rev() {
            e[k] = (e[k] + p - e[k - j]) % p;
        }
        // P_m = P_{m+1} E_m; both factors minus one start at degree >= m+1
        for k in (m + 1)..=n {
            let mut acc: u128 = pp[k] as u128 + e[k] as u128;
            if k >= 2 * m + 3 {
                for a in (m + 2)..=(k - m - 1) {
                    acc += pp[a] as u128 * e[k - a] as u128;
                }
            }
            next[k] = (acc % p as u128) as u64;
        }
        pp[(m + 1)..=n].copy_from_slice(&next[(m + 1)..=n]);
        for k in (m + 1)..=n {
            f2[k] = (f2[k] + p - pp[k]) % p;
        }
    }
    f2
}

/// Integer coefficients of `F_2(x)` up to `order`.
pub fn f2_coefficients(order: usize) -> Vec<BigInt> {
    if order == 0 {
        return vec![BigInt::zero()];
    }
    let q = q_coefficients(order);
    let bound = BigInt::from(2 * order) * &q[order] + 1u32;
    let mut modulus = BigInt::one();
    let mut value = vec![BigInt::zero(); order + 1];
    let mut candidate = PRIME_CEILING - 1;
    while modulus <= bound {
        while !is_prime(candidate) {
            candidate -= 2;
        }
        let p = candidate;
        candidate -= 2;
        let residues = f2_mod(order, p);
        // Garner step: v' = v + M * ((r - v) * M^{-1} mod p)
        let m_mod = (&modulus % p).to_u64().expect("residue below p");
        let inv = pow_mod(m_mod, p - 2, p);
        let p_big = BigInt::from(p);
        for (v, &r) in value.iter_mut().zip(&residues) {
            let v_mod = v.mod_floor(&p_big).to_u64().expect("residue below p");
            let t = mul_mod((r + p - v_mod) % p, inv, p);
            *v += &modulus * t;
        }
        modulus *= p;
    }
    let half = &modulus >> 1;
    for v in &mut value {
        if *v > half {
            *v -= &modulus;
        }
    }
    value
}

/// Same coefficients by plain big-integer products; a check on
/// `f2_coefficients`.
pub fn f2_coefficients_direct(order: usize) -> Vec<BigInt> {
    let mut f2 = vec![BigInt::zero(); order + 1];
    for m in 0..order {
        let mut pm = vec![BigInt::zero(); order + 1];
        pm[0] = BigInt::one();
        for j in (m + 1)..=order {
            pm = crate::series::apply_binomial(pm, j, (j - m) as i64, order);
        }
        for k in 1..=order {
            f2[k] -= &pm[k];
        }
    }
    f2
}

/// `q(n)` and `q(n) E(W_n)` for all `n <= order`.
#[derive(Clone, Debug)]
pub struct DimensionTable {
    q: Vec<BigInt>,
    numer: Vec<BigInt>,
}

impl DimensionTable {
    pub fn new(order: usize) -> Self {
        let q = q_coefficients(order);
        let f2 = f2_coefficients(order);
        let numer = (0..=order).map(|n| (1..=n).fold(BigInt::zero(), |acc, k| acc + &q[n - k] * &f2[k])).collect();
        DimensionTable { q, numer }
    }

    pub fn order(&self) -> usize {
        self.q.len() - 1
    }

    pub fn q(&self, n: usize) -> &BigInt {
        &self.q[n]
    }

    /// `[x^n] Q(x) F_2(x)`.
    pub fn numerator(&self, n: usize) -> &BigInt {
        &self.numer[n]
    }

    pub fn expected(&self, n: usize) -> Result<BigRational> {
        check_n(n)?;
        if n > self.order() {
            return Err(crate::Error::range("n", n, 1, self.order() as i64));
        }
        Ok(BigRational::new(self.numer[n].clone(), self.q[n].clone()))
    }
}

/// Exact mean largest part of a uniformly random plane partition of `n`.
pub fn expected_dimension(n: usize) -> Result<BigRational> {
    check_n(n)?;
    DimensionTable::new(n).expected(n)
}

/// The same mean as `sum_{m<n} P(W_n > m)`, one restricted series per `m`.
pub fn expected_dimension_by_tail_sum(n: usize) -> Result<BigRational> {
    check_n(n)?;
    let q = q_coefficients(n);
    let mut tail = BigInt::zero();
    for m in 0..n {
        let r = restricted_q_series(m, n);
        let at_most_m = r.coeff(n).to_integer();
        debug_assert!(!at_most_m.is_negative());
        tail += &q[n] - at_most_m;
    }
    Ok(BigRational::new(tail, q[n].clone()))
}
