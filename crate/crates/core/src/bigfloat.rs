//! Binary floating point with a configurable significand, built on `num-bigint`.
//!
//! A value is `mantissa * 2^exponent` where the mantissa carries exactly
//! `bits` significant bits (or is zero). Every arithmetic result is rounded to
//! nearest at the larger of the operand precisions. Elementary functions
//! (`exp`, `ln`, `sin`, `cos`, `sqrt`) evaluate with extra guard bits and round
//! once at the end.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Guard bits added on top of the decimal precision.
const GUARD_BITS: u32 = 40;

/// Working precision, stated in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 50;

    pub fn digits(digits: u32) -> Self {
        Precision(digits.max(1))
    }

    pub fn decimal_digits(self) -> u32 {
        self.0
    }

    /// Significand width used for values at this precision.
    pub fn bits(self) -> u32 {
        (f64::from(self.0) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_DIGITS)
    }
}

#[derive(Clone)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    bits: u32,
}

impl BigFloat {
    pub fn zero(bits: u32) -> Self {
        BigFloat { mantissa: BigInt::zero(), exponent: 0, bits }
    }

    pub fn one(bits: u32) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, bits)
    }

    pub fn from_u64(v: u64, bits: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, bits)
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> Self {
        Self::from_parts(v.clone(), 0, bits)
    }

    /// `numer / denom` rounded to `bits`.
    pub fn from_ratio(r: &BigRational, bits: u32) -> Self {
        let (n, d) = (r.numer(), r.denom());
        if n.is_zero() {
            return Self::zero(bits);
        }
        let shift = i64::from(bits) + 2 + d.bits() as i64 - n.bits() as i64;
        let shift = shift.max(0);
        let q = (n.abs() << shift as usize).div_floor(&d.abs());
        let q = if n.sign() == d.sign() { q } else { -q };
        Self::from_parts(q, -shift, bits)
    }

    pub fn from_fraction(numer: i64, denom: i64, bits: u32) -> Self {
        Self::from_ratio(&BigRational::new(numer.into(), denom.into()), bits)
    }

    /// Exact conversion of a finite `f64`, rounded to `bits`.
    pub fn from_f64(v: f64, bits: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Self::zero(bits);
        }
        let raw = v.abs().to_bits();
        let exp_field = ((raw >> 52) & 0x7ff) as i64;
        let frac = raw & ((1u64 << 52) - 1);
        let (m, e) = if exp_field == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp_field - 1075) };
        let m = BigInt::from(m);
        Self::from_parts(if v < 0.0 { -m } else { m }, e, bits)
    }

    fn from_parts(mantissa: BigInt, exponent: i64, bits: u32) -> Self {
        let mut v = BigFloat { mantissa, exponent, bits };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let nb = self.mantissa.bits() as i64;
        let target = i64::from(self.bits);
        if nb > target {
            let shift = (nb - target) as usize;
            let negative = self.mantissa.is_negative();
            let mag = self.mantissa.magnitude();
            let half = BigUint::one() << (shift - 1);
            let mut m = (mag + half) >> shift;
            let mut e = self.exponent + shift as i64;
            if m.bits() as i64 > target {
                m >>= 1usize;
                e += 1;
            }
            self.mantissa = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, m);
            self.exponent = e;
        } else if nb < target {
            let shift = (target - nb) as usize;
            self.mantissa <<= shift;
            self.exponent -= shift as i64;
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Same value rounded to a different significand width.
    pub fn with_bits(&self, bits: u32) -> Self {
        Self::from_parts(self.mantissa.clone(), self.exponent, bits)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mantissa: self.mantissa.abs(), exponent: self.exponent, bits: self.bits }
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mantissa: self.mantissa.clone(), exponent: self.exponent + k, bits: self.bits }
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exponent + self.mantissa.bits() as i64
    }

    /// `log2 |x|` as an `f64`; `-inf` for zero. Never overflows.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let nb = self.mantissa.bits();
        let keep = nb.min(60);
        let lead = (self.mantissa.magnitude() >> (nb - keep) as usize).to_u64().unwrap_or(0) as f64;
        lead.log2() + (self.exponent + (nb - keep) as i64) as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = self.mantissa.bits();
        let keep = nb.min(60);
        let lead = (self.mantissa.magnitude() >> (nb - keep) as usize).to_u64().unwrap_or(0) as f64;
        let e = self.exponent + (nb - keep) as i64;
        let v = if e > 2000 {
            f64::INFINITY
        } else if e < -2200 {
            0.0
        } else {
            // split the scaling so intermediate powers stay finite
            let half = (e / 2) as i32;
            lead * 2f64.powi(half) * 2f64.powi(e as i32 - half)
        };
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Exact value as a rational.
    pub fn to_ratio(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as usize)
        }
    }

    /// Integer nearest to the value (ties away from zero).
    pub fn round_to_bigint(&self) -> BigInt {
        if self.exponent >= 0 {
            return &self.mantissa << self.exponent as usize;
        }
        let shift = (-self.exponent) as usize;
        let mag = self.mantissa.magnitude();
        let r = if shift > mag.bits() as usize + 1 {
            BigUint::zero()
        } else {
            (mag + (BigUint::one() << (shift - 1))) >> shift
        };
        BigInt::from_biguint(if self.is_negative() { Sign::Minus } else { Sign::Plus }, r)
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        Self::from_parts(&self.mantissa * k, self.exponent, self.bits)
    }

    pub fn div_u64(&self, k: u64) -> Self {
        assert!(k != 0, "division by zero");
        if self.is_zero() {
            return self.clone();
        }
        let shift = 66usize;
        let m = (&self.mantissa << shift) / BigInt::from(k);
        Self::from_parts(m, self.exponent - shift as i64, self.bits)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.bits) / self
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain { op: "sqrt", detail: "negative argument".into() });
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let want = 2 * i64::from(self.bits) + 4;
        let mut shift = (want - self.mantissa.bits() as i64).max(0);
        if (self.exponent - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = self.mantissa.magnitude() << shift as usize;
        let r = m.sqrt();
        Ok(Self::from_parts(BigInt::from(r), (self.exponent - shift) / 2, self.bits))
    }

    pub fn pi(bits: u32) -> Self {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let w = bits + 16;
        let a = atan_inv(5, w).mul_u64(16);
        let b = atan_inv(239, w).mul_u64(4);
        (a - b).with_bits(bits)
    }

    pub fn ln2(bits: u32) -> Self {
        // ln 2 = 2 atanh(1/3)
        let w = bits + 16;
        let t = BigFloat::from_fraction(1, 3, w);
        atanh_series(&t).mul_u64(2).with_bits(bits)
    }

    pub fn exp(&self) -> Self {
        let bits = self.bits;
        if self.is_zero() {
            return Self::one(bits);
        }
        let mag = self.log2_abs();
        if mag > 62.0 {
            panic!("exp argument out of range: 2^{mag}");
        }
        // x = k ln2 + r with |r| <= ln2 / 2
        let k = (self.to_f64() / std::f64::consts::LN_2).round() as i64;
        let extra = 64 - k.unsigned_abs().leading_zeros();
        let w = bits + 32 + extra;
        let x = self.with_bits(w);
        let r = if k == 0 { x } else { x - BigFloat::ln2(w).mul_i64(k) };
        // halve s times, Taylor, then square back
        let s = 8 + (f64::from(w)).sqrt() as u32 / 2;
        let w2 = w + s;
        let r = r.with_bits(w2).mul_pow2(-i64::from(s));
        let mut sum = BigFloat::one(w2);
        let mut term = BigFloat::one(w2);
        let eps = -(i64::from(w2)) - 2;
        for i in 1u64.. {
            term = (&term * &r).div_u64(i);
            if term.is_zero() || term.top() < eps {
                break;
            }
            sum = &sum + &term;
        }
        for _ in 0..s {
            sum = sum.square();
        }
        sum.mul_pow2(k).with_bits(bits)
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain { op: "ln", detail: "non-positive argument".into() });
        }
        let bits = self.bits;
        let w = bits + 32;
        // x = y * 2^k with y in [1/sqrt2, sqrt2)
        let mut k = self.top();
        let mut y = self.with_bits(w).mul_pow2(-k);
        // y in [1/2, 1)
        if y.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
            y = y.mul_pow2(1);
            k -= 1;
        }
        let one = BigFloat::one(w);
        let t = (&y - &one) / (&y + &one);
        let mut res = atanh_series(&t).mul_pow2(1);
        if k != 0 {
            res = res + BigFloat::ln2(w + 64).with_bits(w).mul_i64(k);
        }
        Ok(res.with_bits(bits))
    }

    /// `ln(1 + x)` for `x > -1`, accurate when `x` is tiny.
    pub fn ln_1p(&self) -> Result<Self> {
        let bits = self.bits;
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.top() < -(i64::from(bits) / 4) {
            // alternating series x - x^2/2 + x^3/3 - ...
            let w = bits + 8;
            let x = self.with_bits(w);
            let mut p = x.clone();
            let mut sum = x.clone();
            let eps = self.top() - i64::from(w) - 2;
            for i in 2u64.. {
                p = -(&p * &x);
                let term = p.div_u64(i);
                if term.is_zero() || term.top() < eps {
                    break;
                }
                sum = &sum + &term;
            }
            return Ok(sum.with_bits(bits));
        }
        let one = BigFloat::one(bits + 8);
        (&one + &self.with_bits(bits + 8)).ln().map(|v| v.with_bits(bits))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        let v = self.mul_u64(k.unsigned_abs());
        if k < 0 {
            -v
        } else {
            v
        }
    }

    /// `x^y = exp(y ln x)` for positive `x`.
    pub fn powf(&self, y: &BigFloat) -> Result<Self> {
        let w = self.bits.max(y.bits) + 32;
        let l = self.with_bits(w).ln()?;
        Ok((&l * &y.with_bits(w)).exp().with_bits(self.bits.max(y.bits)))
    }

    /// `x^(p/q)` for positive `x`.
    pub fn pow_frac(&self, p: i64, q: i64) -> Result<Self> {
        let y = BigFloat::from_fraction(p, q, self.bits);
        self.powf(&y)
    }

    pub fn powi(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BigFloat::one(self.bits);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `(cos x, sin x)`.
    pub fn cos_sin(&self) -> (Self, Self) {
        let bits = self.bits;
        if self.is_zero() {
            return (Self::one(bits), Self::zero(bits));
        }
        let extra = (self.top().max(0) as u32) + 8;
        let w = bits + 32 + extra;
        let x = self.with_bits(w);
        // reduce into [-pi, pi]
        let two_pi = BigFloat::pi(w).mul_pow2(1);
        let turns = (&x / &two_pi).round_to_bigint();
        let r = x - &two_pi * &BigFloat::from_bigint(&turns, w);
        let s = 8 + (f64::from(w)).sqrt() as u32 / 2;
        let w2 = w + 2 * s;
        let r = r.with_bits(w2).mul_pow2(-i64::from(s));
        let r2 = r.square();
        let eps = -(i64::from(w2)) - 2;
        // sin and cos of the reduced angle
        let mut sn = r.clone();
        let mut cs = BigFloat::one(w2);
        let mut ts = r.clone();
        let mut tc = BigFloat::one(w2);
        for i in 1u64.. {
            tc = -(&tc * &r2).div_u64((2 * i - 1) * (2 * i));
            ts = -(&ts * &r2).div_u64((2 * i) * (2 * i + 1));
            if tc.top() < eps && ts.top() < eps {
                break;
            }
            cs = &cs + &tc;
            sn = &sn + &ts;
        }
        // double-angle back up
        for _ in 0..s {
            let new_sn = (&sn * &cs).mul_pow2(1);
            let new_cs = &(&cs * &cs) - &(&sn * &sn);
            sn = new_sn;
            cs = new_cs;
        }
        (cs.with_bits(bits), sn.with_bits(bits))
    }

    pub fn cos(&self) -> Self {
        self.cos_sin().0
    }

    pub fn sin(&self) -> Self {
        self.cos_sin().1
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Scientific notation with `digits` significant digits, rounded half away
    /// from zero, e.g. `-1.2345e+3`. Zero prints as `0`.
    pub fn to_sci_string(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let mag = self.to_ratio().abs();
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        let (scaled, e10) = loop {
            let shift = i64::from(digits) - 1 - e10;
            let scaled = if shift >= 0 {
                &mag * BigRational::from_integer(BigInt::from(10u32).pow(shift as u32))
            } else {
                &mag / BigRational::from_integer(BigInt::from(10u32).pow((-shift) as u32))
            };
            let rounded = round_half_away(&scaled);
            let lo = BigInt::from(10u32).pow(digits - 1);
            let hi = &lo * 10u32;
            if rounded >= hi {
                e10 += 1;
            } else if rounded < lo {
                e10 -= 1;
            } else {
                break (rounded, e10);
            }
        };
        let s = scaled.to_string();
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if s.len() > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push('e');
        out.push_str(&format!("{e10:+}"));
        out
    }

    /// Parses a decimal literal such as `-12.5e-3` or `7`.
    pub fn parse_decimal(s: &str, bits: u32) -> Result<Self> {
        parse_decimal_ratio(s).map(|r| Self::from_ratio(&r, bits))
    }
}

/// Exact rational value of a decimal literal.
pub fn parse_decimal_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(s.to_string());
    let s = s.trim();
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mant: BigInt = all.parse().map_err(|_| bad())?;
    let e10 = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let mut r = if e10 >= 0 {
        BigRational::from_integer(mant * ten.pow(e10 as u32))
    } else {
        BigRational::new(mant, ten.pow((-e10) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

fn round_half_away(r: &BigRational) -> BigInt {
    let two = BigInt::from(2u32);
    let n = r.numer() * &two + r.denom();
    n.div_floor(&(r.denom() * two))
}

/// `atan(1/k)` by its Taylor series.
fn atan_inv(k: u64, bits: u32) -> BigFloat {
    let x = BigFloat::one(bits).div_u64(k);
    let x2 = x.square();
    let mut p = x.clone();
    let mut sum = x;
    let eps = -(i64::from(bits)) - 4;
    for i in 1u64.. {
        p = -(&p * &x2);
        let term = p.div_u64(2 * i + 1);
        if term.is_zero() || term.top() < eps {
            break;
        }
        sum = &sum + &term;
    }
    sum
}

/// `atanh(t) = t + t^3/3 + t^5/5 + ...` for `|t| < 1/2`.
fn atanh_series(t: &BigFloat) -> BigFloat {
    if t.is_zero() {
        return t.clone();
    }
    let t2 = t.square();
    let mut p = t.clone();
    let mut sum = t.clone();
    let eps = t.top() - i64::from(t.bits) - 4;
    for i in 1u64.. {
        p = &p * &t2;
        let term = p.div_u64(2 * i + 1);
        if term.is_zero() || term.top() < eps {
            break;
        }
        sum = &sum + &term;
    }
    sum
}

fn add_impl(a: &BigFloat, b: &BigFloat, negate_b: bool) -> BigFloat {
    let bits = a.bits.max(b.bits);
    if b.is_zero() {
        return a.with_bits(bits);
    }
    if a.is_zero() {
        let v = b.with_bits(bits);
        return if negate_b { -v } else { v };
    }
    let bm = if negate_b { -&b.mantissa } else { b.mantissa.clone() };
    let gap = i64::from(bits) + 4;
    if a.top() - b.top() > gap {
        return a.with_bits(bits);
    }
    if b.top() - a.top() > gap {
        return BigFloat::from_parts(bm, b.exponent, bits);
    }
    let e = a.exponent.min(b.exponent);
    let m = (&a.mantissa << (a.exponent - e) as usize) + (bm << (b.exponent - e) as usize);
    BigFloat::from_parts(m, e, bits)
}

fn mul_impl(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let bits = a.bits.max(b.bits);
    BigFloat::from_parts(&a.mantissa * &b.mantissa, a.exponent + b.exponent, bits)
}

fn div_impl(a: &BigFloat, b: &BigFloat) -> BigFloat {
    assert!(!b.is_zero(), "division by zero");
    let bits = a.bits.max(b.bits);
    if a.is_zero() {
        return BigFloat::zero(bits);
    }
    let shift = (i64::from(bits) + 4 + b.mantissa.bits() as i64 - a.mantissa.bits() as i64).max(0);
    let m = (&a.mantissa << shift as usize) / &b.mantissa;
    BigFloat::from_parts(m, a.exponent - shift - b.exponent, bits)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                $body(self, rhs)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                $body(&self, &rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                $body(&self, rhs)
            }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| add_impl(a, b, false));
binop!(Sub, sub, |a, b| add_impl(a, b, true));
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mantissa: -self.mantissa, exponent: self.exponent, bits: self.bits }
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -(self.clone())
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mantissa.sign(), other.mantissa.sign());
        if sa != sb || self.is_zero() {
            return sa.cmp(&sb);
        }
        let mag = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exponent.min(other.exponent);
                let a = self.mantissa.magnitude() << (self.exponent - e) as usize;
                let b = other.mantissa.magnitude() << (other.exponent - e) as usize;
                a.cmp(&b)
            }
            o => o,
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({})", self.to_sci_string(20))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20) as u32;
        f.write_str(&self.to_sci_string(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u32 = 240;

    fn close(a: &BigFloat, b: &BigFloat, rel: f64) -> bool {
        let d = (a - b).abs();
        d.log2_abs() <= b.abs().log2_abs() + rel.log2()
    }

    #[test]
    fn pi_matches_reference() {
        let want =
            BigFloat::parse_decimal("3.14159265358979323846264338327950288419716939937510582097494459", B).unwrap();
        assert!(close(&BigFloat::pi(B), &want, 1e-60));
    }

    #[test]
    fn ln2_and_exp_are_inverse() {
        let l = BigFloat::ln2(B);
        let back = l.exp();
        assert!(close(&back, &BigFloat::from_i64(2, B), 1e-65));
        let want =
            BigFloat::parse_decimal("0.693147180559945309417232121458176568075500134360255254120680009", B).unwrap();
        assert!(close(&l, &want, 1e-60));
    }

    #[test]
    fn exp_ln_roundtrip_wide_range() {
        for s in ["1e-30", "0.3", "1", "7.25", "123456.789", "-40.5", "2.5e7"] {
            let x = BigFloat::parse_decimal(s, B).unwrap();
            let y = x.exp();
            let back = y.ln().unwrap();
            assert!(close(&back, &x, 1e-60) || (&back - &x).abs().log2_abs() < -190.0, "{s}");
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let x = BigFloat::from_i64(2, B);
        let r = x.sqrt().unwrap();
        assert!(close(&r.square(), &x, 1e-68));
        assert!(BigFloat::from_i64(-1, B).sqrt().is_err());
    }

    #[test]
    fn trig_identities() {
        for s in ["0.001", "0.5", "3", "-2.2", "100.75"] {
            let x = BigFloat::parse_decimal(s, B).unwrap();
            let (c, sn) = x.cos_sin();
            let one = &c.square() + &sn.square();
            assert!(close(&one, &BigFloat::one(B), 1e-65), "{s}");
            assert!((c.to_f64() - x.to_f64().cos()).abs() < 1e-14);
            assert!((sn.to_f64() - x.to_f64().sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn ln_1p_tiny_argument() {
        let x = BigFloat::parse_decimal("1e-40", B).unwrap();
        let l = x.ln_1p().unwrap();
        let want = &x - &x.square().mul_pow2(-1);
        assert!(close(&l, &want, 1e-65));
    }

    #[test]
    fn sci_string_rounds_and_reparses() {
        let x = BigFloat::from_fraction(2, 3, B);
        assert_eq!(x.to_sci_string(5), "6.6667e-1");
        assert_eq!(BigFloat::from_i64(-1000, B).to_sci_string(3), "-1.00e+3");
        assert_eq!(BigFloat::from_i64(9999, B).to_sci_string(2), "1.0e+4");
        assert_eq!(BigFloat::zero(B).to_sci_string(4), "0");
        let s = BigFloat::pi(B).to_sci_string(30);
        let back = BigFloat::parse_decimal(&s, B).unwrap();
        assert!(close(&back, &BigFloat::pi(B), 1e-29));
    }

    #[test]
    fn ordering_and_f64_conversion() {
        let a = BigFloat::from_f64(-1.5, B);
        let b = BigFloat::from_f64(0.25, B);
        assert!(a < b);
        assert_eq!(a.to_f64(), -1.5);
        assert_eq!((&a * &b).to_f64(), -0.375);
        assert_eq!((&a / &b).to_f64(), -6.0);
        assert_eq!(BigFloat::from_i64(3, B).powi(5).to_f64(), 243.0);
    }
}
