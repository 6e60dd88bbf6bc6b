//! Partitions, signatures, exact rationals, q-Pochhammer and q-binomial
//! primitives, and the `D_inf` distance between discrete laws.

mod law;
mod partition;
mod qseries;
mod rational;

pub use law::{dinf, DiscreteLaw};
pub use partition::{Partition, Signature};
pub use qseries::{
    binom2, check_t, qbinom, qbinom_f64, qpoch, qpoch_c64, qpoch_f64, qpoch_inf, tfact, tfact_table, Extent,
    DEFAULT_TOL,
};
pub use rational::{
    format_rational, parse_rational, rat, rational_from_f64, rational_serde, rpow, to_f64, Rational,
};
