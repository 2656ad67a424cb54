//! Exact and asymptotic statistics of plane partitions.

pub mod asymptotics;
pub mod bigfloat;
pub mod error;
pub mod oracle;
pub mod series;
pub mod stats;

pub use bigfloat::{BigFloat, Precision};
pub use error::{Error, Result};
