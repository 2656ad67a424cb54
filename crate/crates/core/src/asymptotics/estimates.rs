use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::lambert::TailBound;
use super::saddle::SaddlePoint;
use super::Asymptotics;
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};
use crate::stats::{trace_numerators, DimensionTable};

/// Largest admissible last term `1 - e^{H_M}` of the `F_2` sum.
pub const F2_TAIL_TOLERANCE: f64 = 1e-12;

/// Which mean is compared with its saddle-point value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    Trace,
    Dimension,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Trace => "trace",
            Statistic::Dimension => "dimension",
        })
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(Statistic::Trace),
            "dimension" => Ok(Statistic::Dimension),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// Exact mean, the saddle value `F(e^{-d_n})`, and their quotient.
#[derive(Clone, Debug)]
pub struct MeanSaddleRatio {
    pub statistic: Statistic,
    pub n: u64,
    pub exact: BigFloat,
    pub saddle: BigFloat,
    pub ratio: BigFloat,
}

/// `F_2(e^{-d})` summed over `m < cutoff`.
#[derive(Clone, Debug)]
pub struct F2Evaluation {
    pub value: BigFloat,
    /// Number of `m` terms summed.
    pub cutoff: usize,
    /// Largest `j` kept in the `H_m` sums.
    pub terms_j: usize,
    /// `1 - e^{H_cutoff}`, the first omitted term.
    pub tail_term: BigFloat,
}

impl Asymptotics {
    fn check_n_min(&self, n: u64, min: u64) -> Result<()> {
        if n < min {
            return Err(Error::range("n", n, min as i64, i64::MAX));
        }
        Ok(())
    }

    /// `Q(e^{-d_n}) ~ exp(zeta(3)/d^2 + ln(d)/12 + 2 gamma)`.
    pub fn q_meinardus_at_saddle(&self, n: u64) -> Result<BigFloat> {
        let s = self.solve_saddle(n)?;
        self.q_meinardus_at(&s.d)
    }

    pub fn q_meinardus_at(&self, d: &BigFloat) -> Result<BigFloat> {
        let d = self.check_d("q_meinardus_at_saddle", d)?;
        let c = self.constants();
        let log = &c.zeta3 / &d.square() + d.ln()?.div_u64(12) + c.gamma.mul_pow2(1);
        Ok(log.exp())
    }

    /// `e^{n d} Q(e^{-d}) / sqrt(2 pi b)` at the saddle point.
    pub fn hayman_q_estimate(&self, n: u64) -> Result<BigFloat> {
        let s = self.solve_saddle(n)?;
        self.hayman_q_at(&s)
    }

    pub fn hayman_q_at(&self, s: &SaddlePoint) -> Result<BigFloat> {
        let log_q = self.log_q_direct(&s.d)?.value;
        let nd = s.d.mul_u64(s.n);
        let denom = (self.constants().pi.mul_pow2(1) * &s.b).sqrt()?;
        Ok((nd + log_q).exp() / denom)
    }

    /// Closed-form asymptotic count
    /// `zeta(3)^{7/36} 2^{-11/36} (3 pi)^{-1/2} n^{-25/36} exp(3 zeta(3)^{1/3} (n/2)^{2/3} + 2 gamma)`.
    pub fn wright_q(&self, n: u64) -> Result<BigFloat> {
        self.check_n_min(n, 1)?;
        let c = self.constants();
        let bits = self.bits();
        let nf = BigFloat::from_u64(n, bits);
        let ln_z3 = c.zeta3.ln()?;
        let ln2 = BigFloat::ln2(bits);
        let ln_3pi = c.pi.mul_u64(3).ln()?;
        let ln_n = nf.ln()?;
        let growth = c.zeta3.pow_frac(1, 3)?.mul_u64(3) * nf.mul_pow2(-1).pow_frac(2, 3)?;
        let log = ln_z3.mul_u64(7).div_u64(36)
            - ln2.mul_u64(11).div_u64(36)
            - ln_3pi.mul_pow2(-1)
            - ln_n.mul_u64(25).div_u64(36)
            + growth
            + c.gamma.mul_pow2(1);
        Ok(log.exp())
    }

    /// `kappa_1 n^{2/3}`.
    pub fn expected_trace_asymptotic(&self, n: u64) -> Result<BigFloat> {
        self.check_n_min(n, 1)?;
        Ok(&self.constants().kappa1 * &BigFloat::from_u64(n, self.bits()).pow_frac(2, 3)?)
    }

    /// `kappa_2 n^{1/3} ln n`.
    pub fn expected_dimension_asymptotic(&self, n: u64) -> Result<BigFloat> {
        self.check_n_min(n, 2)?;
        let nf = BigFloat::from_u64(n, self.bits());
        Ok(&self.constants().kappa2 * &nf.pow_frac(1, 3)? * nf.ln()?)
    }

    /// `(n / 2 zeta(3))^{1/3} ((2/3) ln n - ln ln n - (2/3) ln(2 zeta(3)) + ln 3)`.
    pub fn f2_asymptotic(&self, n: u64) -> Result<BigFloat> {
        self.check_n_min(n, 3)?;
        let bits = self.bits();
        let nf = BigFloat::from_u64(n, bits);
        let two_z3 = self.constants().zeta3.mul_pow2(1);
        let ln_n = nf.ln()?;
        let bracket = ln_n.mul_u64(2).div_u64(3) - ln_n.ln()? - two_z3.ln()?.mul_u64(2).div_u64(3)
            + BigFloat::from_u64(3, bits).ln()?;
        Ok((nf / two_z3).pow_frac(1, 3)? * bracket)
    }

    /// Starting cutoff `ceil((3/d) ln(1/d))`, at least one.
    pub fn f2_default_cutoff(d: f64) -> usize {
        let m = (3.0 / d * (1.0 / d).ln()).ceil();
        if m.is_finite() && m >= 1.0 {
            m as usize
        } else {
            1
        }
    }

    /// Terms `1 - e^{H_m}` for `m = 0..=cutoff` with
    /// `H_m = sum_{j>m} (j - m) ln(1 - e^{-jd})`, and the largest `j` kept.
    pub fn f2_terms(&self, d: &BigFloat, cutoff: usize) -> Result<(Vec<BigFloat>, usize)> {
        let d = self.check_d("f2_at_saddle", d)?;
        let w = self.bits() + 24;
        let df = d.to_f64();
        // j-range: absolute tail of sum j |ln(1 - x^j)| <= sum 2 j x^j
        let bound = TailBound { scale: 2.0, power: 1 };
        let tol = self.log_tolerance();
        let mut terms_j = cutoff + 1;
        while !bound.log_tail(terms_j, df).is_some_and(|t| t <= tol) {
            terms_j += 1 + terms_j / 8;
        }
        let x = (-d.with_bits(w)).exp();
        let mut logs = Vec::with_capacity(terms_j);
        let mut xj = x.clone();
        for _ in 1..=terms_j {
            logs.push((-&xj).ln_1p()?);
            xj = &xj * &x;
        }
        // suffix sums A_m = sum_{j>m} j L_j and B_m = sum_{j>m} L_j
        let mut a = BigFloat::zero(w);
        let mut b = BigFloat::zero(w);
        let one = BigFloat::one(w);
        let mut terms = vec![BigFloat::zero(w); cutoff + 1];
        for m in (0..terms_j).rev() {
            let l = &logs[m]; // L_{m+1}
            a = a + l.mul_u64(m as u64 + 1);
            b = b + l;
            if m <= cutoff {
                let h = &a - &b.mul_u64(m as u64);
                terms[m] = &one - &h.exp();
            }
        }
        Ok((terms, terms_j))
    }

    /// `F_2(e^{-d}) = sum_{m < cutoff} (1 - e^{H_m})`. Fails unless the first
    /// omitted term is below `F2_TAIL_TOLERANCE`.
    pub fn f2_at_saddle(&self, d: &BigFloat, cutoff: usize) -> Result<F2Evaluation> {
        let (mut terms, terms_j) = self.f2_terms(d, cutoff)?;
        let tail_term = terms.pop().expect("cutoff + 1 terms");
        if tail_term.to_f64() >= F2_TAIL_TOLERANCE {
            return Err(Error::CutoffNotReached {
                cutoff,
                tail: tail_term.to_sci_string(6),
                tolerance: format!("{F2_TAIL_TOLERANCE:e}"),
            });
        }
        let value = terms.iter().fold(BigFloat::zero(tail_term.bits()), |acc, t| acc + t);
        Ok(F2Evaluation {
            value: value.with_bits(self.bits()),
            cutoff,
            terms_j,
            tail_term: tail_term.with_bits(self.bits()),
        })
    }

    /// `f2_at_saddle` starting from the default cutoff and doubling it until
    /// the tail test passes.
    pub fn f2_at_saddle_auto(&self, d: &BigFloat) -> Result<F2Evaluation> {
        let d = self.check_d("f2_at_saddle", d)?;
        let mut cutoff = Self::f2_default_cutoff(d.to_f64());
        loop {
            match self.f2_at_saddle(&d, cutoff) {
                Err(Error::CutoffNotReached { .. }) if cutoff < 1 << 30 => cutoff *= 2,
                other => return other,
            }
        }
    }

    /// `F(e^{-d_n})` for the statistic's auxiliary series.
    pub fn saddle_value(&self, statistic: Statistic, d: &BigFloat) -> Result<BigFloat> {
        match statistic {
            Statistic::Trace => self.f1_at_saddle(d),
            Statistic::Dimension => Ok(self.f2_at_saddle_auto(d)?.value),
        }
    }

    /// Compares an exact mean with `F(e^{-d_n})`.
    pub fn mean_saddle_ratio_with_exact(
        &self,
        statistic: Statistic,
        n: u64,
        exact: &BigRational,
    ) -> Result<MeanSaddleRatio> {
        let s = self.solve_saddle(n)?;
        let exact = BigFloat::from_ratio(exact, self.bits());
        let saddle = self.saddle_value(statistic, &s.d)?;
        let ratio = &exact / &saddle;
        Ok(MeanSaddleRatio { statistic, n, exact, saddle, ratio })
    }

    /// As `mean_saddle_ratio_with_exact`, computing the exact mean first.
    pub fn mean_saddle_ratio(&self, statistic: Statistic, n: u64) -> Result<MeanSaddleRatio> {
        self.check_n_min(n, 1)?;
        let nu = n as usize;
        let exact = match statistic {
            Statistic::Trace => {
                let num = trace_numerators(nu);
                let q = crate::series::q_coefficients(nu);
                BigRational::new(num[nu].clone(), q[nu].clone())
            }
            Statistic::Dimension => DimensionTable::new(nu).expected(nu)?,
        };
        self.mean_saddle_ratio_with_exact(statistic, n, &exact)
    }
}
