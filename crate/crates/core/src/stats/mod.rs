//! Exact generating-function statistics: trace, largest part, boxed counts.

pub mod boxed;
pub mod dimension;
pub mod restricted;
pub mod trace;

pub use boxed::{box_polynomial, boxed_count_series, BoxSpec};
pub use dimension::{
    expected_dimension, expected_dimension_by_tail_sum, f2_coefficients, f2_coefficients_direct, DimensionTable,
};
pub use restricted::restricted_q_series;
pub use trace::{expected_trace, trace_counts, trace_distribution, trace_numerators, TraceDistribution};
