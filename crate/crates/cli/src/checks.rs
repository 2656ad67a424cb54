//! Brute-force enumeration against the generating-function side.

use num_bigint::BigInt;
use num_rational::BigRational;

use planestat::oracle::OracleStats;
use planestat::series::q_coefficients;
use planestat::stats::{
    boxed_count_series, expected_trace, restricted_q_series, trace_counts, BoxSpec, DimensionTable,
};
use planestat::Result;

pub const SELFTEST_MAX_N: u32 = 12;

fn mean(dist: &std::collections::BTreeMap<u32, u64>, count: u64) -> BigRational {
    let total: u64 = dist.iter().map(|(&v, &c)| u64::from(v) * c).sum();
    BigRational::new(total.into(), count.into())
}

/// Named pass/fail verdicts for one `n`, in a fixed order.
pub fn oracle_checks(s: &OracleStats) -> Result<Vec<(&'static str, bool)>> {
    let n = s.n as usize;
    let q = q_coefficients(n);
    let count = BigInt::from(s.count) == q[n];

    let traces = &trace_counts(n)[n];
    let trace_dist = (1..=n).all(|m| traces[m] == BigInt::from(s.trace.get(&(m as u32)).copied().unwrap_or(0)));

    let restricted = (0..=n).all(|m| {
        let series = restricted_q_series(m, n).coeff(n).to_integer();
        series == BigInt::from(OracleStats::cumulative(&s.height, m as u32))
    });

    let mean_trace = expected_trace(n)? == mean(&s.trace, s.count);
    let mean_dimension = DimensionTable::new(n).expected(n)? == mean(&s.height, s.count);

    let nn = s.n;
    let boxed = boxed_count_series(BoxSpec::finite(nn, nn, nn)?, n)?.coeff(n).to_integer() == q[n];

    Ok(vec![
        ("symmetry", s.symmetric()),
        ("count", count),
        ("trace_distribution", trace_dist),
        ("restricted", restricted),
        ("mean_trace", mean_trace),
        ("mean_dimension", mean_dimension),
        ("box", boxed),
    ])
}
