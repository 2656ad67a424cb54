use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bigfloat::BigFloat;

/// Bernoulli numbers `B_0..=B_max` with `B_1 = -1/2`.
pub fn bernoulli(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
    b.push(BigRational::one());
    for m in 1..=max {
        // sum_{k<=m} C(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `zeta(3) = (5/2) sum_k (-1)^(k+1) / (k^3 C(2k, k))`.
pub fn zeta3(bits: u32) -> BigFloat {
    let w = bits + 16;
    let mut sum = BigFloat::zero(w);
    let mut central = BigInt::one();
    for k in 1u64.. {
        central = central * BigInt::from(2 * (2 * k - 1)) / BigInt::from(k);
        let denom = &central * BigInt::from(k).pow(3);
        let term = BigFloat::from_ratio(&BigRational::new(BigInt::one(), denom), w);
        if term.log2_abs() < -f64::from(w) - 4.0 {
            break;
        }
        sum = if k % 2 == 1 { sum + term } else { sum - term };
    }
    sum.mul_u64(5).mul_pow2(-1).with_bits(bits)
}

/// `zeta'(-1)` by Euler-Maclaurin on `sum_{k<=N} k ln k`.
pub fn zeta_prime_minus_one(bits: u32) -> BigFloat {
    let w = bits + 24;
    // the remainder after the j-th correction is about e^{-2 pi N}
    let n = 64u64.max(u64::from(bits) / 5);
    let mut s = BigFloat::zero(w);
    for k in 2..=n {
        let kf = BigFloat::from_u64(k, w);
        s = s + kf.ln().expect("positive").mul_u64(k);
    }
    let nf = BigFloat::from_u64(n, w);
    let ln_n = nf.ln().expect("positive");
    let n2 = BigFloat::from_u64(n * n, w);
    let twelfth = BigFloat::from_fraction(1, 12, w);
    let coef = n2.mul_pow2(-1) + BigFloat::from_u64(n, w).mul_pow2(-1) + &twelfth;
    let mut value = -s + coef * ln_n - n2.mul_pow2(-2) + twelfth;
    let eps = -f64::from(w) - 4.0;
    let jmax = 8 + bits as usize / 8;
    let b = bernoulli(2 * jmax);
    for j in 2..=jmax {
        let two_j = 2 * j as u64;
        // (2j-3)!/(2j)! = 1 / ((2j)(2j-1)(2j-2))
        let ratio = BigRational::new(BigInt::one(), BigInt::from(two_j * (two_j - 1) * (two_j - 2)));
        let npow = BigInt::from(n).pow((two_j - 2) as u32);
        let coeff = &b[2 * j] * ratio / BigRational::from_integer(npow);
        let term = BigFloat::from_ratio(&coeff, w);
        if term.is_zero() || term.log2_abs() < eps {
            break;
        }
        value = value - term;
    }
    value.with_bits(bits)
}

/// Constants of the saddle-point formulas at a fixed working precision.
#[derive(Clone, Debug)]
pub struct Constants {
    pub pi: BigFloat,
    pub zeta2: BigFloat,
    pub zeta3: BigFloat,
    pub zeta_prime_neg1: BigFloat,
    /// `zeta'(-1) / 2`.
    pub gamma: BigFloat,
    /// `(2 zeta(3))^{-2/3} pi^2 / 6`, the mean-trace constant.
    pub kappa1: BigFloat,
    /// `(2/3) (2 zeta(3))^{-1/3}`, the mean-dimension constant.
    pub kappa2: BigFloat,
}

impl Constants {
    pub fn new(bits: u32) -> Self {
        let pi = BigFloat::pi(bits);
        let zeta2 = pi.square().div_u64(6);
        let zeta3 = zeta3(bits);
        let zeta_prime_neg1 = zeta_prime_minus_one(bits);
        let gamma = zeta_prime_neg1.mul_pow2(-1);
        let two_zeta3 = zeta3.mul_pow2(1);
        let kappa1 = two_zeta3.pow_frac(-2, 3).expect("positive base") * &zeta2;
        let kappa2 = (two_zeta3.pow_frac(-1, 3).expect("positive base").mul_u64(2)).div_u64(3);
        Constants { pi, zeta2, zeta3, zeta_prime_neg1, gamma, kappa1, kappa2 }
    }
}
