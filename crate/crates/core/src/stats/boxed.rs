use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::restricted::{restricted_coefficients, two_sided_coefficients};
use crate::error::{Error, Result};
use crate::series::{q_coefficients, TruncatedSeries};

/// Bounds on rows, columns and part size; `None` leaves a side open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxSpec {
    pub l: Option<u32>,
    pub s: Option<u32>,
    pub t: Option<u32>,
}

impl BoxSpec {
    pub fn new(l: Option<u32>, s: Option<u32>, t: Option<u32>) -> Result<Self> {
        for (what, v) in [("l", l), ("s", s), ("t", t)] {
            if v == Some(0) {
                return Err(Error::range(what, 0, 1, i64::from(u32::MAX)));
            }
        }
        Ok(BoxSpec { l, s, t })
    }

    pub fn finite(l: u32, s: u32, t: u32) -> Result<Self> {
        Self::new(Some(l), Some(s), Some(t))
    }

    pub fn unbounded() -> Self {
        BoxSpec { l: None, s: None, t: None }
    }

    fn bounds(&self) -> Vec<usize> {
        [self.l, self.s, self.t].into_iter().flatten().map(|v| v as usize).collect()
    }
}

/// Divides `c` by `1 - x^a`, failing unless the division is exact.
fn divide_exact(c: &[BigInt], a: usize) -> Result<Vec<BigInt>> {
    let deg = c.len() - 1;
    if a > deg {
        return if c.iter().all(Zero::is_zero) {
            Ok(vec![BigInt::zero()])
        } else {
            Err(Error::InexactDivision { divisor_power: a })
        };
    }
    let mut quot = vec![BigInt::zero(); deg - a + 1];
    for i in 0..=deg - a {
        quot[i] = if i >= a { &c[i] + &quot[i - a] } else { c[i].clone() };
    }
    // the top `a` coefficients must equal -quot[i - a]
    for i in (deg - a + 1)..=deg {
        let carried = if i >= a && i - a < quot.len() { quot[i - a].clone() } else { BigInt::zero() };
        if c[i] != -carried {
            return Err(Error::InexactDivision { divisor_power: a });
        }
    }
    Ok(quot)
}

/// `prod_{(h,j,k) in B(l,s,t)} (1 - x^{h+j+k-1}) / (1 - x^{h+j+k-2})` as an
/// exact polynomial. Factors common to numerator and denominator cancel
/// before expansion; the rest is expanded and divided exactly.
pub fn box_polynomial(l: u32, s: u32, t: u32) -> Result<Vec<BigInt>> {
    let (l, s, t) = (l as usize, s as usize, t as usize);
    // net[a]: multiplicity of (1 - x^a) in the numerator minus the denominator
    let mut net = vec![0i64; l + s + t];
    for h in 1..=l {
        for j in 1..=s {
            for k in 1..=t {
                net[h + j + k - 1] += 1;
                net[h + j + k - 2] -= 1;
            }
        }
    }
    let mut numer = vec![BigInt::one()];
    for (a, &m) in net.iter().enumerate().skip(1) {
        for _ in 0..m.max(0) {
            let mut next = vec![BigInt::zero(); numer.len() + a];
            for (i, c) in numer.iter().enumerate() {
                next[i] += c;
                next[i + a] -= c;
            }
            numer = next;
        }
    }
    for (a, &m) in net.iter().enumerate().skip(1) {
        for _ in 0..(-m).max(0) {
            numer = divide_exact(&numer, a)?;
        }
    }
    while numer.len() > 1 && numer.last().is_some_and(Zero::is_zero) {
        numer.pop();
    }
    Ok(numer)
}

/// Generating function of plane partitions fitting in `spec`, up to `order`.
pub fn boxed_count_series(spec: BoxSpec, order: usize) -> Result<TruncatedSeries> {
    let b = spec.bounds();
    let coeffs = match b[..] {
        [l, s, t] => {
            let mut p = box_polynomial(l as u32, s as u32, t as u32)?;
            p.resize(p.len().max(order + 1), BigInt::zero());
            p.truncate(order + 1);
            p
        }
        [x, y] => two_sided_coefficients(x, y, order),
        [m] => restricted_coefficients(m, order),
        _ => q_coefficients(order),
    };
    Ok(TruncatedSeries::from_integers(order, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use num_rational::BigRational;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn small_boxes() {
        let b = boxed_count_series(BoxSpec::finite(1, 1, 1).unwrap(), 2).unwrap();
        assert_eq!(b.coeffs(), &ints(&[1, 1, 0])[..]);
        let b = boxed_count_series(BoxSpec::finite(1, 1, 2).unwrap(), 3).unwrap();
        assert_eq!(b.coeffs(), &ints(&[1, 1, 1, 0])[..]);
        // 2x2x2 box: total count is the number of plane partitions in it, 20
        let p = box_polynomial(2, 2, 2).unwrap();
        assert_eq!(p.iter().sum::<BigInt>(), BigInt::from(20));
        assert_eq!(p.len(), 9);
    }

    #[test]
    fn zero_sides_rejected() {
        assert!(BoxSpec::finite(0, 1, 1).is_err());
    }

    #[test]
    fn inexact_division_detected() {
        let c: Vec<BigInt> = [1, 1].iter().map(|&v| v.into()).collect();
        assert_eq!(divide_exact(&c, 1), Err(Error::InexactDivision { divisor_power: 1 }));
        let c: Vec<BigInt> = [1, 0, -1].iter().map(|&v| v.into()).collect();
        let q: Vec<BigInt> = [1, 1].iter().map(|&v| v.into()).collect();
        assert_eq!(divide_exact(&c, 1).unwrap(), q);
    }

    #[test]
    fn large_box_gives_q() {
        let q = q_coefficients(8);
        for n in 1..=8u32 {
            let b = boxed_count_series(BoxSpec::finite(n, n, n).unwrap(), n as usize).unwrap();
            assert_eq!(b.coeff(n as usize).to_integer(), q[n as usize]);
        }
    }

    #[test]
    fn symmetric_in_the_three_sides() {
        for l in 1..=4 {
            for s in 1..=4 {
                for t in 1..=4 {
                    let base = boxed_count_series(BoxSpec::finite(l, s, t).unwrap(), 20).unwrap();
                    for (a, b, c) in [(l, t, s), (s, l, t), (s, t, l), (t, l, s), (t, s, l)] {
                        let other = boxed_count_series(BoxSpec::finite(a, b, c).unwrap(), 20).unwrap();
                        assert_eq!(base, other);
                    }
                }
            }
        }
    }

    #[test]
    fn matches_oracle_box_counts() {
        for n in 1..=9u32 {
            let all = oracle::collect(n).unwrap();
            for (l, s, t) in [(1, 2, 3), (2, 2, 2), (3, 1, 4), (2, 3, 2)] {
                let want =
                    all.iter().filter(|p| p.num_rows() <= l && p.num_columns() <= s && p.largest_part() <= t).count();
                let got = boxed_count_series(BoxSpec::finite(l, s, t).unwrap(), 9).unwrap();
                assert_eq!(got.coeff(n as usize).to_integer(), BigInt::from(want), "n={n} box={l},{s},{t}");
            }
        }
    }

    #[test]
    fn open_sides_use_limiting_products() {
        let q = q_coefficients(10);
        let all = boxed_count_series(BoxSpec::unbounded(), 10).unwrap();
        assert_eq!(all.integer_coeffs().unwrap(), q);
        // a closed box larger than the order agrees with the open one
        let open = boxed_count_series(BoxSpec::new(Some(2), None, Some(3)).unwrap(), 10).unwrap();
        let closed = boxed_count_series(BoxSpec::finite(2, 11, 3).unwrap(), 10).unwrap();
        assert_eq!(open, closed);
        let open = boxed_count_series(BoxSpec::new(None, None, Some(2)).unwrap(), 10).unwrap();
        let closed = boxed_count_series(BoxSpec::finite(11, 11, 2).unwrap(), 10).unwrap();
        assert_eq!(open, closed);
    }
}
