//! Lambert series `sum_k c_k x^k` with divisor-sum coefficients.
//!
//! `a = sum sigma2(k) x^k`, `b = sum k sigma2(k) x^k`,
//! `ln Q = sum sigma2(k)/k x^k` and `F_1 = sum sigma1(k) x^k`, which are the
//! double sums over `j` and `t` regrouped by `k = jt`.

use super::{Asymptotics, Truncated};
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::series::DivisorTable;

/// Hard ceiling on the number of terms of a single sum.
const MAX_TERMS: usize = 1 << 26;

/// Coefficient bound `|c_k| <= scale * k^power`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TailBound {
    pub scale: f64,
    pub power: i32,
}

impl TailBound {
    /// Natural log of a bound on `sum_{k>K} |c_k| x^k`, or `None` while the
    /// term ratio is not yet below one.
    pub(crate) fn log_tail(self, cutoff: usize, d: f64) -> Option<f64> {
        let k1 = cutoff as f64 + 1.0;
        let p = f64::from(self.power);
        let ratio = ((k1 + 1.0) / k1).powf(p) * (-d).exp();
        if ratio >= 1.0 {
            return None;
        }
        Some(self.scale.ln() + p * k1.ln() - k1 * d - (-ratio).ln_1p())
    }
}

/// Which divisor-sum coefficient a series carries.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Coefficient {
    Sigma1,
    Sigma2,
    KSigma2,
    Sigma2OverK,
}

impl Coefficient {
    fn bound(self) -> TailBound {
        // sigma2(k) <= zeta(2) k^2 and sigma1(k) <= k^2
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        match self {
            Coefficient::Sigma1 => TailBound { scale: 1.0, power: 2 },
            Coefficient::Sigma2 => TailBound { scale: z2, power: 2 },
            Coefficient::KSigma2 => TailBound { scale: z2, power: 3 },
            Coefficient::Sigma2OverK => TailBound { scale: z2, power: 1 },
        }
    }

    fn apply(self, table: &DivisorTable, k: usize, xk: &BigFloat) -> BigFloat {
        match self {
            Coefficient::Sigma1 => xk.mul_u64(table.sigma1(k)),
            Coefficient::Sigma2 => xk.mul_u64(table.sigma2(k)),
            Coefficient::KSigma2 => xk.mul_u64(table.sigma2(k)).mul_u64(k as u64),
            Coefficient::Sigma2OverK => xk.mul_u64(table.sigma2(k)).div_u64(k as u64),
        }
    }
}

impl Asymptotics {
    fn lambert(&self, op: &'static str, d: &BigFloat, coef: Coefficient) -> Result<Truncated> {
        let d = self.check_d(op, d)?;
        let w = self.bits + 24;
        let x = (-d.with_bits(w)).exp();
        let df = d.to_f64();
        let bound = coef.bound();
        let tol = self.log_tolerance();
        let mut table = self.divisors(1024);
        let mut xk = x.clone();
        let mut total = BigFloat::zero(w);
        for k in 1..=MAX_TERMS {
            if k > table.limit() {
                table = self.divisors(2 * k);
            }
            total = total + coef.apply(&table, k, &xk);
            if let Some(tail) = bound.log_tail(k, df) {
                if tail <= total.log2_abs() * std::f64::consts::LN_2 + tol {
                    return Ok(Truncated { value: total.with_bits(self.bits), cutoff: k });
                }
            }
            xk = &xk * &x;
        }
        Err(Error::Convergence { what: op, detail: format!("more than {MAX_TERMS} terms at d = {d}") })
    }

    /// `a(e^{-d}) = sum_j j^2 e^{-jd} / (1 - e^{-jd})`.
    pub fn a_eval(&self, d: &BigFloat) -> Result<BigFloat> {
        self.a_eval_truncated(d).map(|t| t.value)
    }

    pub fn a_eval_truncated(&self, d: &BigFloat) -> Result<Truncated> {
        self.lambert("a_eval", d, Coefficient::Sigma2)
    }

    /// `b(e^{-d}) = sum_k k sigma2(k) e^{-kd}`, minus the `d`-derivative of `a`.
    pub fn b_eval(&self, d: &BigFloat) -> Result<BigFloat> {
        self.b_eval_truncated(d).map(|t| t.value)
    }

    pub fn b_eval_truncated(&self, d: &BigFloat) -> Result<Truncated> {
        self.lambert("b_eval", d, Coefficient::KSigma2)
    }

    /// `ln Q(e^{-d})`.
    pub fn log_q_direct(&self, d: &BigFloat) -> Result<Truncated> {
        self.lambert("q_direct_at_saddle", d, Coefficient::Sigma2OverK)
    }

    /// `Q(e^{-d})` from its product definition.
    pub fn q_direct_at_saddle(&self, d: &BigFloat) -> Result<BigFloat> {
        Ok(self.log_q_direct(d)?.value.exp())
    }

    /// `F_1(e^{-d}) = sum_j j e^{-jd} / (1 - e^{-jd})`.
    pub fn f1_at_saddle(&self, d: &BigFloat) -> Result<BigFloat> {
        self.f1_truncated(d).map(|t| t.value)
    }

    pub fn f1_truncated(&self, d: &BigFloat) -> Result<Truncated> {
        self.lambert("f1_at_saddle", d, Coefficient::Sigma1)
    }

    /// Terms `sigma2(k)/k e^{-kd}` for `k = 1..=cutoff` of `ln Q`, at working
    /// precision; used by the circle probe.
    pub(crate) fn log_q_terms(&self, d: &BigFloat, bits: u32) -> Result<Vec<BigFloat>> {
        let cutoff = self.log_q_direct(d)?.cutoff;
        let table = self.divisors(cutoff);
        let x = (-d.with_bits(bits)).exp();
        let mut xk = x.clone();
        let mut out = Vec::with_capacity(cutoff);
        for k in 1..=cutoff {
            out.push(Coefficient::Sigma2OverK.apply(&table, k, &xk));
            xk = &xk * &x;
        }
        Ok(out)
    }
}
