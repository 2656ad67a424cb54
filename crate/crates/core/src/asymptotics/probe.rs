//! Numerical look at `Q(e^{-d_n + i theta})` on the saddle circle.
//!
//! Inside `|theta| <= delta_n = d_n^{5/3} / ln n` the modulus should follow
//! `e^{-theta^2 b / 2}`; outside it should be negligible against
//! `1 / sqrt(b)`. The modulus is even in `theta`, so both grids run over
//! non-negative angles: `[0, delta_n]` and `[delta_n, pi]`, ends included.

use super::Asymptotics;
use crate::bigfloat::BigFloat;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ProbePoint {
    pub theta: BigFloat,
    /// `|Q(e^{-d+i theta})| / Q(e^{-d})`.
    pub modulus_ratio: BigFloat,
    /// `e^{-theta^2 b / 2}`.
    pub gaussian: BigFloat,
    /// `|modulus_ratio / gaussian - 1|`.
    pub deviation: BigFloat,
    /// `|Q(e^{-d+i theta}) e^{-i n theta} / (Q(e^{-d}) gaussian) - 1|`.
    pub phase_deviation: BigFloat,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub n: u64,
    pub d: BigFloat,
    pub b: BigFloat,
    pub delta: BigFloat,
    pub cutoff: usize,
    pub inside: Vec<ProbePoint>,
    pub outside: Vec<ProbePoint>,
    pub inside_max_deviation: BigFloat,
    pub inside_max_phase_deviation: BigFloat,
    pub outside_max_ratio: BigFloat,
    /// `sqrt(b) * outside_max_ratio`.
    pub outside_decay: BigFloat,
}

pub const MIN_PROBE_N: u64 = 10;
pub const MIN_GRID: usize = 16;

impl Asymptotics {
    /// `d_n^{5/3} / ln n`.
    pub fn probe_window(&self, n: u64, d: &BigFloat) -> Result<BigFloat> {
        Ok(d.pow_frac(5, 3)? / BigFloat::from_u64(n, self.bits()).ln()?)
    }

    pub fn hayman_probe(&self, n: u64, grid_size: usize) -> Result<ProbeReport> {
        if n < MIN_PROBE_N {
            return Err(Error::range("n", n, MIN_PROBE_N as i64, i64::MAX));
        }
        if grid_size < MIN_GRID {
            return Err(Error::range("grid size", grid_size, MIN_GRID as i64, i64::MAX));
        }
        let s = self.solve_saddle(n)?;
        let w = self.bits() + 24;
        let terms = self.log_q_terms(&s.d, w)?;
        let cutoff = terms.len();
        let log_q0 = terms.iter().fold(BigFloat::zero(w), |acc, t| acc + t);
        let delta = self.probe_window(n, &s.d)?;
        let pi = self.constants().pi.with_bits(w);
        let b = s.b.with_bits(w);
        let last = (grid_size - 1) as u64;

        let point = |theta: BigFloat| -> ProbePoint {
            let (c1, s1) = theta.cos_sin();
            let (mut ck, mut sk) = (c1.clone(), s1.clone());
            let mut re = BigFloat::zero(w);
            let mut im = BigFloat::zero(w);
            for t in &terms {
                re = re + t * &ck;
                im = im + t * &sk;
                let next_c = &ck * &c1 - &sk * &s1;
                sk = &sk * &c1 + &ck * &s1;
                ck = next_c;
            }
            let half_var = (&theta.square() * &b).mul_pow2(-1);
            let d_re = re - &log_q0;
            let d_im = im - theta.mul_u64(n);
            let u = &d_re + &half_var;
            let eu = u.exp();
            let one = BigFloat::one(w);
            let deviation = (&eu - &one).abs();
            let (cv, sv) = d_im.cos_sin();
            let x = &(&eu * &cv) - &one;
            let y = &eu * &sv;
            let phase_deviation = (x.square() + y.square()).sqrt().expect("non-negative");
            let bits = self.bits();
            ProbePoint {
                theta: theta.with_bits(bits),
                modulus_ratio: d_re.exp().with_bits(bits),
                gaussian: (-half_var).exp().with_bits(bits),
                deviation: deviation.with_bits(bits),
                phase_deviation: phase_deviation.with_bits(bits),
            }
        };

        let delta_w = delta.with_bits(w);
        let inside: Vec<ProbePoint> = (0..grid_size as u64).map(|i| point(delta_w.mul_u64(i).div_u64(last))).collect();
        let span = &pi - &delta_w;
        let outside: Vec<ProbePoint> =
            (0..grid_size as u64).map(|i| point(&delta_w + &span.mul_u64(i).div_u64(last))).collect();

        let zero = BigFloat::zero(self.bits());
        let max_of = |pts: &[ProbePoint], f: fn(&ProbePoint) -> &BigFloat| {
            pts.iter().map(f).fold(zero.clone(), |m, v| m.max(v.clone()))
        };
        let inside_max_deviation = max_of(&inside, |p| &p.deviation);
        let inside_max_phase_deviation = max_of(&inside, |p| &p.phase_deviation);
        let outside_max_ratio = max_of(&outside, |p| &p.modulus_ratio);
        let outside_decay = &s.b.sqrt()? * &outside_max_ratio;
        Ok(ProbeReport {
            n,
            d: s.d,
            b: s.b,
            delta,
            cutoff,
            inside,
            outside,
            inside_max_deviation,
            inside_max_phase_deviation,
            outside_max_ratio,
            outside_decay,
        })
    }
}
