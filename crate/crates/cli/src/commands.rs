use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use planestat::asymptotics::{Asymptotics, Statistic};
use planestat::series::q_coefficients;
use planestat::stats::{trace_numerators, DimensionTable};
use planestat::{BigFloat, Error, Precision, Result};

use crate::checks;
use crate::config::RunConfig;
use crate::report::Report;

/// Side channel for progress messages.
pub type Progress<'a> = &'a dyn Fn(&str);

struct Fmt {
    digits: u32,
    bits: u32,
}

impl Fmt {
    fn new(cfg: &RunConfig, engine: &Asymptotics) -> Self {
        Fmt { digits: cfg.output_digits(), bits: engine.bits() }
    }

    fn dec(&self, v: &BigFloat) -> String {
        v.to_sci_string(self.digits)
    }

    fn rational(&self, r: &BigRational) -> String {
        self.dec(&BigFloat::from_ratio(r, self.bits))
    }

    /// Quotient of two emitted decimals, so that the ratio column re-divides
    /// exactly from the columns beside it.
    fn ratio(&self, num: &str, den: &str) -> Result<String> {
        let a = BigFloat::parse_decimal(num, self.bits)?;
        let b = BigFloat::parse_decimal(den, self.bits)?;
        if b.is_zero() {
            return Err(Error::Domain { op: "ratio", detail: "zero denominator".into() });
        }
        Ok(self.dec(&(a / b)))
    }
}

fn fraction(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn engine(cfg: &RunConfig) -> Result<Asymptotics> {
    Asymptotics::new(Precision::digits(cfg.precision))
}

fn checked_grid(cfg: &RunConfig) -> Result<Vec<u64>> {
    let grid = cfg.grid();
    if grid.is_empty() {
        return Err(Error::Domain { op: "n grid", detail: "empty".into() });
    }
    for &n in &grid {
        if n < 1 || n > cfg.max_n {
            return Err(Error::OutOfRange { what: "n", value: n as i64, min: 1, max: cfg.max_n as i64 });
        }
    }
    Ok(grid)
}

fn meta<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Exact `q(n)` against the closed form and the saddle-point estimate.
pub fn count(cfg: &RunConfig, progress: Progress) -> Result<Report> {
    let grid = checked_grid(cfg)?;
    let e = engine(cfg)?;
    let f = Fmt::new(cfg, &e);
    let top = *grid.last().expect("non-empty grid");
    progress(&format!("exact q(n) up to n = {top}"));
    let q = q_coefficients(top as usize);
    let mut report =
        Report::new(cfg.clone(), &["n", "exact", "exact_decimal", "wright", "hayman", "ratio_wright", "ratio_hayman"]);
    report.meta.insert("method_exact".into(), "sigma2 recurrence".into());
    for n in grid {
        progress(&format!("count n = {n}"));
        let s = e.solve_saddle(n)?;
        let log_q = e.log_q_direct(&s.d)?;
        let exact = &q[n as usize];
        let exact_dec = f.dec(&BigFloat::from_bigint(exact, e.bits()));
        let wright = f.dec(&e.wright_q(n)?);
        let hayman = f.dec(&e.hayman_q_at(&s)?);
        let cells = vec![
            Some(n.to_string()),
            Some(exact.to_string()),
            Some(exact_dec.clone()),
            Some(wright.clone()),
            Some(hayman.clone()),
            Some(f.ratio(&exact_dec, &wright)?),
            Some(f.ratio(&exact_dec, &hayman)?),
        ];
        let m = meta([
            ("d", f.dec(&s.d)),
            ("residual", s.residual.to_sci_string(3)),
            ("cutoff_a", s.cutoff.to_string()),
            ("cutoff_logq", log_q.cutoff.to_string()),
        ]);
        report.push(cells, m);
    }
    Ok(report)
}

/// Exact means beside `F(e^{-d_n})` and the power-law asymptotics.
pub fn stat(cfg: &RunConfig, statistic: Statistic, progress: Progress) -> Result<Report> {
    let grid = checked_grid(cfg)?;
    let e = engine(cfg)?;
    let f = Fmt::new(cfg, &e);
    let top = *grid.last().expect("non-empty grid") as usize;
    progress(&format!("exact {statistic} means up to n = {top}"));
    let exact_means: Vec<BigRational> = match statistic {
        Statistic::Trace => {
            let q = q_coefficients(top);
            let num = trace_numerators(top);
            grid.iter().map(|&n| BigRational::new(num[n as usize].clone(), q[n as usize].clone())).collect()
        }
        Statistic::Dimension => {
            let table = DimensionTable::new(top);
            grid.iter().map(|&n| table.expected(n as usize)).collect::<Result<_>>()?
        }
    };
    let mut report = Report::new(
        cfg.clone(),
        &["n", "exact", "exact_decimal", "saddle", "asymptotic", "ratio_saddle", "ratio_asymptotic"],
    );
    for (&n, exact) in grid.iter().zip(&exact_means) {
        progress(&format!("{statistic} n = {n}"));
        let s = e.solve_saddle(n)?;
        let exact_dec = f.rational(exact);
        let mut m = meta([("d", f.dec(&s.d)), ("cutoff_a", s.cutoff.to_string())]);
        let saddle = match statistic {
            Statistic::Trace => {
                let t = e.f1_truncated(&s.d)?;
                m.insert("cutoff_f1".into(), t.cutoff.to_string());
                t.value
            }
            Statistic::Dimension => {
                let t = e.f2_at_saddle_auto(&s.d)?;
                m.insert("cutoff_f2_m".into(), t.cutoff.to_string());
                m.insert("cutoff_f2_j".into(), t.terms_j.to_string());
                t.value
            }
        };
        let asymptotic = match statistic {
            Statistic::Trace => Some(e.expected_trace_asymptotic(n)?),
            Statistic::Dimension if n >= 2 => Some(e.expected_dimension_asymptotic(n)?),
            Statistic::Dimension => None,
        };
        let saddle = f.dec(&saddle);
        let asymptotic = asymptotic.map(|a| f.dec(&a));
        let ratio_asymptotic = asymptotic.as_deref().map(|a| f.ratio(&exact_dec, a)).transpose()?;
        let cells = vec![
            Some(n.to_string()),
            Some(fraction(exact)),
            Some(exact_dec.clone()),
            Some(saddle.clone()),
            asymptotic,
            Some(f.ratio(&exact_dec, &saddle)?),
            ratio_asymptotic,
        ];
        report.push(cells, m);
    }
    Ok(report)
}

/// Enumeration of one `n`, its distributions, and the cross-checks.
pub fn oracle(cfg: &RunConfig, n: u64, progress: Progress) -> Result<Report> {
    let n32 = u32::try_from(n).map_err(|_| Error::OutOfRange { what: "n", value: i64::MAX, min: 1, max: 20 })?;
    progress(&format!("enumerating plane partitions of {n}"));
    let stats = planestat::oracle::statistics(n32)?;
    let verdicts = checks::oracle_checks(&stats)?;
    let mut report = Report::new(cfg.clone(), &["value", "trace", "height", "width", "depth"]);
    let get = |d: &BTreeMap<u32, u64>, m: u32| d.get(&m).copied().unwrap_or(0).to_string();
    for m in 1..=n32 {
        let cells = vec![
            Some(m.to_string()),
            Some(get(&stats.trace, m)),
            Some(get(&stats.height, m)),
            Some(get(&stats.width, m)),
            Some(get(&stats.depth, m)),
        ];
        report.push(cells, BTreeMap::new());
    }
    report.meta.insert("count".into(), stats.count.to_string());
    for (name, ok) in &verdicts {
        report.meta.insert(format!("check_{name}"), verdict(*ok).into());
    }
    report.passed = verdicts.iter().all(|(_, ok)| *ok);
    Ok(report)
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Behaviour of `Q` on the saddle circle, inside and outside the window.
pub fn probe(cfg: &RunConfig, n: u64, grid_size: usize, progress: Progress) -> Result<Report> {
    let e = engine(cfg)?;
    let f = Fmt::new(cfg, &e);
    progress(&format!("probing the saddle circle at n = {n}"));
    let p = e.hayman_probe(n, grid_size)?;
    let mut report = Report::new(
        cfg.clone(),
        &["index", "region", "theta", "modulus_ratio", "gaussian", "deviation", "phase_deviation"],
    );
    let regions = p.inside.iter().map(|pt| ("inside", pt)).chain(p.outside.iter().map(|pt| ("outside", pt)));
    for (i, (region, pt)) in regions.enumerate() {
        let cells = vec![
            Some(i.to_string()),
            Some(region.to_string()),
            Some(f.dec(&pt.theta)),
            Some(f.dec(&pt.modulus_ratio)),
            Some(f.dec(&pt.gaussian)),
            Some(f.dec(&pt.deviation)),
            Some(f.dec(&pt.phase_deviation)),
        ];
        report.push(cells, BTreeMap::new());
    }
    let m = &mut report.meta;
    m.insert("d".into(), f.dec(&p.d));
    m.insert("b".into(), f.dec(&p.b));
    m.insert("delta".into(), f.dec(&p.delta));
    m.insert("cutoff_logq".into(), p.cutoff.to_string());
    m.insert("inside_max_deviation".into(), f.dec(&p.inside_max_deviation));
    m.insert("inside_max_phase_deviation".into(), f.dec(&p.inside_max_phase_deviation));
    m.insert("outside_max_ratio".into(), f.dec(&p.outside_max_ratio));
    m.insert("outside_decay".into(), f.dec(&p.outside_decay));
    Ok(report)
}

/// All oracle cross-checks for `n <= 12`, one row per `n`.
pub fn selftest(cfg: &RunConfig, progress: Progress) -> Result<Report> {
    let mut report: Option<Report> = None;
    let mut all = true;
    for n in 1..=checks::SELFTEST_MAX_N {
        progress(&format!("selftest n = {n}"));
        let stats = planestat::oracle::statistics(n)?;
        let verdicts = checks::oracle_checks(&stats)?;
        let r = report.get_or_insert_with(|| {
            let mut cols = vec!["n", "count"];
            cols.extend(verdicts.iter().map(|(name, _)| *name));
            Report::new(cfg.clone(), &cols)
        });
        let mut cells = vec![Some(n.to_string()), Some(stats.count.to_string())];
        for (_, ok) in &verdicts {
            all &= *ok;
            cells.push(Some(verdict(*ok).to_string()));
        }
        r.push(cells, BTreeMap::new());
    }
    let mut report = report.expect("at least one n");
    report.passed = all;
    report.meta.insert("result".into(), verdict(all).into());
    Ok(report)
}
