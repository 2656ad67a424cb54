use super::Asymptotics;
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};

/// Solution of `a(e^{-d}) = n`.
#[derive(Clone, Debug)]
pub struct SaddlePoint {
    pub n: u64,
    pub d: BigFloat,
    pub a: BigFloat,
    pub b: BigFloat,
    /// `|a(e^{-d}) - n| / n`.
    pub residual: BigFloat,
    /// Cutoff index of the final `a` evaluation.
    pub cutoff: usize,
}

/// Truncated expansions of `1/d_n`, `1/d_n^2` and `ln(1/d_n^2)`.
#[derive(Clone, Debug)]
pub struct DnInverse {
    pub inv_d: BigFloat,
    pub inv_d2: BigFloat,
    pub log_inv_d2: BigFloat,
}

const MAX_ITERATIONS: usize = 200;

impl Asymptotics {
    fn check_n(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::range("n", n, 1, i64::MAX));
        }
        Ok(())
    }

    /// `(2 zeta(3) / n)^{1/3}`.
    pub fn dn_leading(&self, n: u64) -> Result<BigFloat> {
        self.check_n(n)?;
        let two_z3 = self.constants().zeta3.mul_pow2(1);
        (two_z3 / BigFloat::from_u64(n, self.bits())).pow_frac(1, 3)
    }

    /// `(2 zeta(3) / n)^{1/3} - 1/(36 n)`.
    pub fn dn_expansion(&self, n: u64) -> Result<BigFloat> {
        let lead = self.dn_leading(n)?;
        Ok(lead - BigFloat::from_u64(36 * n, self.bits()).recip())
    }

    pub fn dn_inverse_expansions(&self, n: u64) -> Result<DnInverse> {
        self.check_n(n)?;
        let c = self.constants();
        let nf = BigFloat::from_u64(n, self.bits());
        let two_z3 = c.zeta3.mul_pow2(1);
        let ratio = &nf / &two_z3;
        let inv_d = ratio.pow_frac(1, 3)? + (two_z3.pow_frac(2, 3)? * nf.pow_frac(1, 3)?).mul_u64(36).recip();
        let inv_d2 = ratio.pow_frac(2, 3)? + c.zeta3.mul_u64(36).recip();
        let log_inv_d2 = (nf.ln()? - two_z3.ln()?).mul_u64(2).div_u64(3);
        Ok(DnInverse { inv_d, inv_d2, log_inv_d2 })
    }

    /// Bracketing, bisection to relative width `10^{-3}`, then Newton steps
    /// `d += (a - n) / b` until the residual is below `10^{-(digits-10)}`.
    pub fn solve_saddle(&self, n: u64) -> Result<SaddlePoint> {
        self.check_n(n)?;
        let nf = BigFloat::from_u64(n, self.bits());
        let above = |d: &BigFloat| -> Result<bool> { Ok(self.a_eval(d)? > nf) };

        let seed = self.dn_leading(n)?;
        let mut lo = seed.clone();
        let mut hi = seed;
        for _ in 0..MAX_ITERATIONS {
            if above(&lo)? {
                break;
            }
            lo = lo.mul_pow2(-1);
        }
        for _ in 0..MAX_ITERATIONS {
            if !above(&hi)? {
                break;
            }
            hi = hi.mul_pow2(1);
        }
        if !above(&lo)? || above(&hi)? {
            return Err(Error::Convergence { what: "solve_saddle", detail: format!("no bracket for n = {n}") });
        }
        let width = BigFloat::from_fraction(1, 1000, self.bits());
        while (&hi - &lo) > &width * &lo {
            let mid = (&lo + &hi).mul_pow2(-1);
            if above(&mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }

        let target = -(f64::from(self.precision().decimal_digits()) - 10.0) * std::f64::consts::LOG2_10;
        let mut d = (&lo + &hi).mul_pow2(-1);
        for _ in 0..MAX_ITERATIONS {
            let a = self.a_eval_truncated(&d)?;
            let residual = ((&a.value - &nf) / &nf).abs();
            let b = self.b_eval(&d)?;
            if residual.is_zero() || residual.log2_abs() <= target {
                return Ok(SaddlePoint { n, d, a: a.value, b, residual, cutoff: a.cutoff });
            }
            let next = &d + &((&a.value - &nf) / &b);
            d = if next > lo && next < hi { next } else { (&lo + &hi).mul_pow2(-1) };
            if above(&d)? {
                lo = d.clone();
            } else {
                hi = d.clone();
            }
        }
        Err(Error::Convergence { what: "solve_saddle", detail: format!("residual target missed for n = {n}") })
    }
}
