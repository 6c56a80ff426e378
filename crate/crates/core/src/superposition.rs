//! Superposition `Z(x) = R(F(x))` through compositae, the logarithmic
//! superposition `G(x) = ln(1/(1-F(x)))`, and the integrality sums built on
//! them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::compositae::{compositae_dp, CompositaeTable};
use crate::error::{Error, Result};
use crate::rational::BigRat;
use crate::serde_str;
use crate::series::{series_add, series_mul, IntSeries, LogSeries, RatSeries};

/// Identifiers of the outer and inner series of a superposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperpositionSource {
    pub outer: String,
    pub inner: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperpositionResult {
    /// `z(0..=N)`.
    pub z: RatSeries,
    /// `n·z(n)` for `n = 1..=N`.
    pub n_times_z: Vec<BigRat>,
    pub source: SuperpositionSource,
}

impl SuperpositionResult {
    pub fn with_source(mut self, outer: impl Into<String>, inner: impl Into<String>) -> Self {
        self.source = SuperpositionSource {
            outer: outer.into(),
            inner: inner.into(),
        };
        self
    }
}

/// Coefficients of `ln(1/(1-F(x)))` and `1/(1-F(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogSuperposition {
    pub order: usize,
    /// `g(0..=N)`, with `g(0) = 0`.
    pub g: RatSeries,
    /// `n·g(n)` for `n = 1..=N`.
    #[serde(with = "serde_str::decimal_vec")]
    pub ng: Vec<BigInt>,
    /// `h(n)` for `n = 1..=N`; `h(0) = 1` is implicit.
    #[serde(with = "serde_str::decimal_vec")]
    pub h: Vec<BigInt>,
}

impl LogSuperposition {
    /// `n·g(n)` for `1 ≤ n ≤ order`.
    pub fn ng(&self, n: usize) -> &BigInt {
        &self.ng[n - 1]
    }

    /// `h(n)` for `0 ≤ n ≤ order`.
    pub fn h(&self, n: usize) -> BigInt {
        if n == 0 {
            BigInt::one()
        } else {
            self.h[n - 1].clone()
        }
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroOrder)
    } else {
        Ok(())
    }
}

fn ratio(numer: usize, denom: usize) -> BigRat {
    BigRat::new(numer as u64, denom as u64)
}

/// `z(n) = Σ_{k=1}^{n} F^Δ(n,k)·r(k)` for `n ≤ n_max`, with `z(0) = r(0)`.
pub fn superpose(r: &RatSeries, f: &IntSeries, n_max: usize) -> Result<SuperpositionResult> {
    require_positive(n_max)?;
    if r.order() < n_max {
        return Err(Error::InsufficientOrder {
            needed: n_max,
            available: r.order(),
        });
    }
    let table = compositae_dp(f, n_max)?;
    let z = RatSeries::from_fn(n_max, |n| {
        if n == 0 {
            return r.coeff(0).clone();
        }
        r.terms()
            .filter(|&(k, _)| k >= 1 && k <= n)
            .map(|(k, rk)| &BigRat::from_integer(table.get(n, k).clone()) * rk)
            .sum()
    });
    let n_times_z = (1..=n_max)
        .map(|n| z.coeff(n) * &BigRat::from_integer(n as u64))
        .collect();
    Ok(SuperpositionResult {
        z,
        n_times_z,
        source: SuperpositionSource {
            outer: "R".into(),
            inner: "F".into(),
        },
    })
}

/// `R(F(x))` truncated at `n_max`, evaluated by Horner's rule on series.
/// Independent of the compositae; used to cross-check [`superpose`].
pub fn compose_truncated(r: &RatSeries, f: &IntSeries, n_max: usize) -> Result<RatSeries> {
    if r.order() < n_max {
        return Err(Error::InsufficientOrder {
            needed: n_max,
            available: r.order(),
        });
    }
    f.require_order(n_max)?;
    let inner = f.with_order(n_max)?.to_rat_series();
    let mut acc = RatSeries::constant(n_max, r.coeff(n_max).clone());
    for k in (0..n_max).rev() {
        acc = series_add(
            &series_mul(&acc, &inner),
            &RatSeries::constant(n_max, r.coeff(k).clone()),
        );
    }
    Ok(acc)
}

fn log_from_table(table: &CompositaeTable) -> Result<LogSuperposition> {
    let order = table.order();
    let mut g = Vec::with_capacity(order);
    let mut ng = Vec::with_capacity(order);
    let mut h = Vec::with_capacity(order);
    for n in 1..=order {
        let gn: BigRat = table
            .row(n)
            .iter()
            .enumerate()
            .map(|(i, v)| BigRat::new(v.clone(), (i + 1) as u64))
            .sum();
        let scaled = &gn * &BigRat::from_integer(n as u64);
        let scaled = scaled.to_integer().ok_or_else(|| Error::NonIntegral {
            n,
            value: scaled.to_string(),
        })?;
        g.push(gn);
        ng.push(scaled);
        h.push(table.row_sum(n));
    }
    let g = RatSeries::from_fn(order, |n| {
        if n == 0 {
            BigRat::zero()
        } else {
            g[n - 1].clone()
        }
    });
    Ok(LogSuperposition { order, g, ng, h })
}

/// `g(n) = Σ_k F^Δ(n,k)/k`, `n·g(n)` and `h(n) = Σ_k F^Δ(n,k)` up to `n_max`.
///
/// Fails with [`Error::NonIntegral`] if some `n·g(n)` is not an integer.
pub fn log_superposition(f: &IntSeries, n_max: usize) -> Result<LogSuperposition> {
    require_positive(n_max)?;
    log_from_table(&compositae_dp(f, n_max)?)
}

/// `Σ_{k=1}^{n} (n/k)·F^Δ(n,k)`, which equals `n·g(n)`.
pub fn theorem_sum(f: &IntSeries, n: usize) -> Result<BigRat> {
    require_positive(n)?;
    let table = compositae_dp(f, n)?;
    Ok(table
        .row(n)
        .iter()
        .enumerate()
        .map(|(i, v)| &ratio(n, i + 1) * &BigRat::from_integer(v.clone()))
        .sum())
}

/// `Σ_{k=1}^{n-1} F^Δ(n,k)/k`. Integral whenever `n` is prime; composite `n`
/// are accepted so callers can probe the converse.
pub fn corollary_sum(f: &IntSeries, n: usize) -> Result<BigRat> {
    require_positive(n)?;
    let table = compositae_dp(f, n)?;
    Ok(table.row(n)[..n - 1]
        .iter()
        .enumerate()
        .map(|(i, v)| BigRat::new(v.clone(), (i + 1) as u64))
        .sum())
}

/// `ż(n) = Σ_{k=1}^{n} (n/k)·F^Δ(n,k)·a(k)` for `n = 1..=n_max`.
///
/// Every entry must be an integer; otherwise a [`Error::PropertyViolation`]
/// names the first offending `n`.
pub fn statement21_check(f: &IntSeries, a: &LogSeries, n_max: usize) -> Result<Vec<BigRat>> {
    require_positive(n_max)?;
    if a.order() < n_max {
        return Err(Error::InsufficientOrder {
            needed: n_max,
            available: a.order(),
        });
    }
    let table = compositae_dp(f, n_max)?;
    (1..=n_max)
        .map(|n| {
            let value: BigRat = (1..=n)
                .map(|k| {
                    let term = BigInt::from(n as u64) * table.get(n, k) * a.a(k);
                    BigRat::new(term, k as u64)
                })
                .sum();
            if value.is_integer() {
                Ok(value)
            } else {
                Err(Error::PropertyViolation {
                    n,
                    value: value.to_string(),
                })
            }
        })
        .collect()
}

/// `Σ_{k=1}^{n-1} (a(k)/k)·F^Δ(n,k)`; integral for prime `n`.
pub fn statement22_check(f: &IntSeries, a: &LogSeries, n: usize) -> Result<BigRat> {
    require_positive(n)?;
    if a.order() < n {
        return Err(Error::InsufficientOrder {
            needed: n,
            available: a.order(),
        });
    }
    let table = compositae_dp(f, n)?;
    Ok((1..n)
        .filter(|&k| !a.a(k).is_zero())
        .map(|k| BigRat::new(a.a(k) * table.get(n, k), k as u64))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositae::compositae_bruteforce;
    use crate::series::{geometric_inverse, series_derivative};
    use num_bigint::BigUint;
    use num_integer::binomial;
    use proptest::prelude::*;

    fn int(v: i64) -> BigRat {
        BigRat::from_integer(v)
    }

    fn ones(order: usize) -> IntSeries {
        IntSeries::from_fn(order, |_| BigInt::one()).unwrap()
    }

    fn x_only(order: usize) -> IntSeries {
        IntSeries::from_values([1])
            .unwrap()
            .with_order(order)
            .unwrap()
    }

    fn fib_gf(order: usize) -> IntSeries {
        IntSeries::from_values([1, 1])
            .unwrap()
            .with_order(order)
            .unwrap()
    }

    #[test]
    fn superpose_geometric() {
        let r = RatSeries::from_fn(8, |_| int(1));
        let z = superpose(&r, &x_only(8), 8).unwrap();
        assert_eq!(z.z, RatSeries::from_fn(8, |_| int(1)));
    }

    #[test]
    fn superpose_log_of_ones() {
        let r = LogSeries::ones(3).unwrap().to_rat_series();
        let z = superpose(&r, &ones(3), 3).unwrap();
        assert_eq!(z.z.coeff(3), &BigRat::new(7, 3));
        assert_eq!(z.n_times_z[2], int(7));
        assert_eq!(z.z.coeff(0), &BigRat::zero());
    }

    #[test]
    fn superpose_zero_outer() {
        let z = superpose(&RatSeries::zero(5), &ones(5), 5).unwrap();
        assert!(z.z.is_zero());
        assert!(z.n_times_z.iter().all(BigRat::is_zero));
    }

    #[test]
    fn superpose_order_checks() {
        assert!(matches!(
            superpose(&RatSeries::zero(2), &ones(5), 3),
            Err(Error::InsufficientOrder {
                needed: 3,
                available: 2
            })
        ));
        assert!(matches!(
            superpose(&RatSeries::zero(5), &ones(2), 3),
            Err(Error::InsufficientOrder {
                needed: 3,
                available: 2
            })
        ));
        let z = superpose(&RatSeries::zero(5), &ones(5), 5)
            .unwrap()
            .with_source("ln", "ones");
        assert_eq!(z.source.inner, "ones");
    }

    #[test]
    fn log_superposition_examples() {
        let lucas = [1, 3, 4, 7, 11, 18, 29, 47, 76, 123];
        let ls = log_superposition(&fib_gf(10), 10).unwrap();
        assert_eq!(
            ls.ng,
            lucas.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()
        );
        assert_eq!(ls.h(0), BigInt::one());
        assert_eq!(ls.h(5), BigInt::from(8));

        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        let ls = log_superposition(&IntSeries::from_values(catalan).unwrap(), 10).unwrap();
        let expected = [1, 3, 10, 35, 126, 462, 1716, 6435, 24310, 92378];
        assert_eq!(
            ls.ng,
            expected
                .iter()
                .map(|&v| BigInt::from(v))
                .collect::<Vec<_>>()
        );

        let ls = log_superposition(&x_only(7), 7).unwrap();
        assert!(ls.ng.iter().all(|v| v.is_one()));
        assert_eq!(ls.g.coeff(4), &BigRat::new(1, 4));
    }

    #[test]
    fn theorem_sum_examples() {
        let primes1 = IntSeries::from_values([1, 2, 3, 5, 7, 11]).unwrap();
        assert_eq!(theorem_sum(&primes1, 6).unwrap(), int(380));
        assert_eq!(theorem_sum(&ones(6), 6).unwrap(), int(63));
        let minus = IntSeries::from_fn(4, |_| BigInt::from(-1)).unwrap();
        assert_eq!(theorem_sum(&minus, 4).unwrap(), int(-1));
        assert!(matches!(
            theorem_sum(&ones(3), 4),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn theorem_sum_minus_ones_matches_composition_oracle() {
        // Σ_k (n/k)·Σ_{compositions} (-1)^k, enumerated directly
        let minus = IntSeries::from_fn(10, |_| BigInt::from(-1)).unwrap();
        for n in 1..=10usize {
            let oracle: BigRat = (1..=n)
                .map(|k| {
                    let count = binomial(n as u64 - 1, k as u64 - 1) as i64;
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    BigRat::new(n as i64 * sign * count, k as i64)
                })
                .sum();
            assert_eq!(theorem_sum(&minus, n).unwrap(), oracle);
            assert_eq!(oracle, int(-1));
        }
    }

    #[test]
    fn corollary_sum_examples() {
        assert_eq!(corollary_sum(&ones(5), 5).unwrap(), int(6));
        let f = IntSeries::from_values([4, -3, 8]).unwrap();
        assert_eq!(corollary_sum(&f, 1).unwrap(), BigRat::zero());
        // composite n = 4 with ones: (2^4 - 2)/4 = 7/2
        assert_eq!(corollary_sum(&ones(4), 4).unwrap(), BigRat::new(7, 2));
    }

    #[test]
    fn corollary_sum_general_expansion_at_five() {
        let assignments: [[i64; 5]; 4] = [
            [1, 2, 3, 4, 5],
            [-3, 7, 0, 2, -1],
            [11, -13, 17, -19, 23],
            [0, 0, 5, 9, 2],
        ];
        for a in assignments {
            let [a1, a2, a3, a4, a5] = a;
            let expected = a5 + a1 * a4 + a2 * a3 + a1 * a1 * a3 + a2 * a2 * a1 + a1 * a1 * a1 * a2;
            let f = IntSeries::from_values(a).unwrap();
            assert_eq!(corollary_sum(&f, 5).unwrap(), int(expected), "{a:?}");
        }
    }

    #[test]
    fn statement21_examples() {
        let primes1 = IntSeries::from_values([1, 2, 3, 5, 7, 11]).unwrap();
        let reduced = statement21_check(&primes1, &LogSeries::ones(6).unwrap(), 6).unwrap();
        for n in 1..=6 {
            assert_eq!(reduced[n - 1], theorem_sum(&primes1, n).unwrap());
        }

        let a = LogSeries::from_values([4, -1, 9, 0, 2]).unwrap();
        let vals = statement21_check(&x_only(5), &a, 5).unwrap();
        assert_eq!(vals, [4, -1, 9, 0, 2].map(int).to_vec());

        // frozen from an independent composition-enumeration oracle
        let a = LogSeries::from_values([1, -2, 3, -4, 5]).unwrap();
        let vals = statement21_check(&fib_gf(5), &a, 5).unwrap();
        assert_eq!(vals, [1, 0, -3, 4, 0].map(int).to_vec());
    }

    #[test]
    fn statement22_examples() {
        let a = LogSeries::ones(7).unwrap();
        assert_eq!(
            statement22_check(&ones(7), &a, 5).unwrap(),
            corollary_sum(&ones(7), 5).unwrap()
        );
        assert_eq!(statement22_check(&ones(7), &a, 7).unwrap(), int(18));

        let a = LogSeries::from_values([1, -2, 3, -4, 5]).unwrap();
        let vals: Vec<BigRat> = (1..=5)
            .map(|n| statement22_check(&fib_gf(5), &a, n).unwrap())
            .collect();
        assert_eq!(vals, [0, 1, -2, 2, -1].map(int).to_vec());
    }

    #[test]
    fn statement22_converse_fails_at_341() {
        let n = 341;
        let value = statement22_check(&ones(n), &LogSeries::ones(n).unwrap(), n).unwrap();
        assert!(value.is_integer());
        // (2^341 - 2)/341 computed independently
        let expected = (BigUint::from(2u32).pow(341) - 2u32) / BigUint::from(341u32);
        assert_eq!(value, BigRat::from_integer(BigInt::from(expected)));
        assert!(BigUint::from(2u32)
            .modpow(&BigUint::from(340u32), &BigUint::from(341u32))
            .is_one());
    }

    #[test]
    fn derivative_identity_of_log() {
        let f = IntSeries::from_values([2, -1, 0, 5, 3, -7, 1, 1]).unwrap();
        let ls = log_superposition(&f, 8).unwrap();
        let lhs = series_mul(
            &series_derivative(&f.to_rat_series()).unwrap(),
            &geometric_inverse(&f),
        );
        for n in 1..=7 {
            assert_eq!(lhs.coeff(n - 1), &BigRat::from_integer(ls.ng(n).clone()));
        }
    }

    fn series_strategy(
        order: std::ops::RangeInclusive<usize>,
        span: i64,
    ) -> impl Strategy<Value = IntSeries> {
        prop::collection::vec(-span..=span, order).prop_map(|v| IntSeries::from_values(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn superpose_equals_horner_composition(
            f in series_strategy(1..=15, 6),
            r in prop::collection::vec((-9i64..=9, 1i64..=7), 16),
        ) {
            let n = f.order();
            let r = RatSeries::from_fn(15, |k| BigRat::new(r[k].0, r[k].1));
            let z = superpose(&r, &f, n).unwrap();
            prop_assert_eq!(z.z, compose_truncated(&r, &f, n).unwrap());
        }

        #[test]
        fn theorem_and_corollary_identity(f in series_strategy(1..=20, 99)) {
            let n = f.order();
            let th = theorem_sum(&f, n).unwrap();
            prop_assert!(th.is_integer());
            let cor = corollary_sum(&f, n).unwrap();
            let f1n = BigRat::from_integer(f.coeff(1).pow(n as u32));
            let nn = BigRat::from_integer(n as u64);
            prop_assert_eq!(&th, &(&(&nn * &cor) + &f1n));
            let ls = log_superposition(&f, n).unwrap();
            prop_assert_eq!(BigRat::from_integer(ls.ng(n).clone()), th);
        }

        #[test]
        fn statement21_always_integral(
            f in series_strategy(1..=12, 20),
            a in prop::collection::vec(-20i64..=20, 12),
        ) {
            let a = LogSeries::from_values(a).unwrap();
            prop_assert!(statement21_check(&f, &a, f.order()).is_ok());
        }

        #[test]
        fn statement22_integral_at_primes(
            f in series_strategy(13..=13, 30),
            a in prop::collection::vec(-30i64..=30, 13),
        ) {
            let a = LogSeries::from_values(a).unwrap();
            for p in [2usize, 3, 5, 7, 11, 13] {
                prop_assert!(statement22_check(&f, &a, p).unwrap().is_integer());
            }
        }
    }

    #[test]
    fn bruteforce_cross_check_small() {
        let f = IntSeries::from_values([3, 0, -2, 1, 4]).unwrap();
        let table = compositae_dp(&f, 5).unwrap();
        for n in 1..=5 {
            for k in 1..=n {
                assert_eq!(table.get(n, k), &compositae_bruteforce(&f, n, k).unwrap());
            }
        }
    }
}
