//! Exact computation with logarithmic generating functions.
//!
//! The crate covers four layers:
//!
//! * [`series`]: truncated power series over arbitrary-precision integers and
//!   rationals ([`IntSeries`], [`RatSeries`], [`LogSeries`]).
//! * [`compositae`]: the compositae triangle `F^Δ(n,k)` of an integer series,
//!   a brute-force composition oracle and multinomial composition counts.
//! * [`superposition`]: `R(F(x))` through compositae, the coefficients of
//!   `ln(1/(1-F(x)))` and the integrality sums built on them.
//! * [`witness`]: one-sided compositeness witnesses and a pseudoprime scanner,
//!   checked against deterministic ground-truth primality from [`primality`].

pub mod compositae;
mod error;
pub mod primality;
mod rational;
pub mod serde_str;
pub mod series;
pub mod superposition;
pub mod witness;

pub use compositae::{
    compositae_bruteforce, compositae_by_multisets, compositae_dp, enumerate_part_multisets,
    multinomial_count, multiset_terms, CompositaeTable, PartMultiset, BRUTEFORCE_CAP,
};
pub use error::{Error, Result};
pub use rational::BigRat;
pub use series::{
    geometric_inverse, series_add, series_derivative, series_mul, series_sub, IntSeries, LogSeries,
    RatSeries,
};
pub use superposition::{
    compose_truncated, corollary_sum, log_superposition, statement21_check, statement22_check,
    superpose, theorem_sum, LogSuperposition, SuperpositionResult,
};
pub use witness::{
    scan_pseudoprimes, witness_central_binomial, witness_fermat2, witness_generic, witness_lucas,
    ScanResult, Verdict, WitnessId, WitnessReport, WitnessTest,
};

pub use num_bigint::{BigInt, BigUint};
