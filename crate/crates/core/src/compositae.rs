//! Compositae `F^Δ(n,k)`: the sum over all compositions of `n` into `k`
//! positive parts of `f(λ₁)·…·f(λ_k)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_str;
use crate::series::IntSeries;

/// Largest `n` accepted by [`compositae_bruteforce`]; there are `2^(n-1)`
/// compositions of `n` in total.
pub const BRUTEFORCE_CAP: usize = 25;

/// Triangle `F^Δ(n,k)` for `1 ≤ k ≤ n ≤ order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositaeTable {
    order: usize,
    /// `rows[n-1][k-1] = F^Δ(n,k)`.
    #[serde(with = "serde_str::decimal_rows")]
    rows: Vec<Vec<BigInt>>,
}

impl CompositaeTable {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `F^Δ(n,k)`, or `None` outside `1 ≤ k ≤ n ≤ order`.
    pub fn entry(&self, n: usize, k: usize) -> Option<&BigInt> {
        if n == 0 || k == 0 {
            return None;
        }
        self.rows.get(n - 1)?.get(k - 1)
    }

    /// Like [`entry`](Self::entry) but treats absent cells as zero.
    pub fn get(&self, n: usize, k: usize) -> &BigInt {
        self.entry(n, k).unwrap_or(&BigInt::ZERO)
    }

    /// `[F^Δ(n,1), ..., F^Δ(n,n)]`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n - 1]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// `Σ_k F^Δ(n,k)`, the coefficient `h(n)` of `1/(1-F)`.
    pub fn row_sum(&self, n: usize) -> BigInt {
        self.row(n).iter().sum()
    }
}

/// Builds the compositae triangle up to `n_max` by recursing on the first part:
/// `F^Δ(n,1) = f(n)`, `F^Δ(n,k) = Σ_m f(m)·F^Δ(n-m, k-1)`.
pub fn compositae_dp(f: &IntSeries, n_max: usize) -> Result<CompositaeTable> {
    f.require_order(n_max)?;
    let terms: Vec<(usize, &BigInt)> = f.terms().filter(|&(m, _)| m <= n_max).collect();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut row = Vec::with_capacity(n);
        row.push(f.coeff(n).clone());
        for k in 2..=n {
            let mut acc = BigInt::zero();
            // parts m leave n-m ≥ k-1 for the remaining k-1 parts
            for &(m, fm) in terms.iter().take_while(|&&(m, _)| m <= n + 1 - k) {
                let prev = &rows[n - m - 1][k - 2];
                if !prev.is_zero() {
                    acc += fm * prev;
                }
            }
            row.push(acc);
        }
        rows.push(row);
    }
    Ok(CompositaeTable { order: n_max, rows })
}

/// `F^Δ(n,k)` by enumerating every composition of `n` into `k` parts.
pub fn compositae_bruteforce(f: &IntSeries, n: usize, k: usize) -> Result<BigInt> {
    if n > BRUTEFORCE_CAP {
        return Err(Error::EnumerationTooLarge {
            n,
            cap: BRUTEFORCE_CAP,
        });
    }
    f.require_order(n)?;
    if k == 0 || k > n {
        return Ok(BigInt::zero());
    }
    let mut prefix = Vec::with_capacity(k);
    let mut total = BigInt::zero();
    enumerate_compositions(n, k, &mut prefix, &mut |parts| {
        total += parts.iter().map(|&p| f.coeff(p)).product::<BigInt>();
    });
    Ok(total)
}

fn enumerate_compositions(
    remaining: usize,
    parts_left: usize,
    prefix: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if parts_left == 1 {
        prefix.push(remaining);
        visit(prefix);
        prefix.pop();
        return;
    }
    for first in 1..=remaining - (parts_left - 1) {
        prefix.push(first);
        enumerate_compositions(remaining - first, parts_left - 1, prefix, visit);
        prefix.pop();
    }
}

/// An unordered multiset of positive parts, stored sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PartMultiset {
    parts: Vec<usize>,
}

impl PartMultiset {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidMultiset("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidMultiset("parts must be positive".into()));
        }
        parts.sort_unstable();
        Ok(PartMultiset { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// `(value, multiplicity)` for each distinct part, ascending by value.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, j)) if *v == p => *j += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `Π f(λ)` over the parts.
    pub fn product(&self, f: &IntSeries) -> BigInt {
        self.parts.iter().map(|&p| f.coeff(p)).product()
    }
}

impl TryFrom<Vec<usize>> for PartMultiset {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        PartMultiset::new(parts)
    }
}

impl From<PartMultiset> for Vec<usize> {
    fn from(m: PartMultiset) -> Self {
        m.parts
    }
}

impl fmt::Display for PartMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Number of distinct orderings of `L`: `k! / (j₁!·…·j_m!)`.
pub fn multinomial_count(multiset: &PartMultiset) -> BigUint {
    let mut remaining = multiset.k();
    let mut count = BigUint::one();
    for (_, j) in multiset.multiplicities() {
        count *= binomial(BigUint::from(remaining), BigUint::from(j));
        remaining -= j;
    }
    count
}

/// All partitions of `n` into exactly `k` positive parts, in lexicographic
/// order of their ascending part lists.
pub fn enumerate_part_multisets(n: usize, k: usize) -> Vec<PartMultiset> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut prefix = Vec::with_capacity(k);
    partitions_rec(n, k, 1, &mut prefix, &mut out);
    out
}

fn partitions_rec(
    remaining: usize,
    parts_left: usize,
    min_part: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<PartMultiset>,
) {
    if parts_left == 1 {
        if remaining >= min_part {
            prefix.push(remaining);
            out.push(PartMultiset {
                parts: prefix.clone(),
            });
            prefix.pop();
        }
        return;
    }
    // the remaining parts_left parts are all ≥ part
    let mut part = min_part;
    while part * parts_left <= remaining {
        prefix.push(part);
        partitions_rec(remaining - part, parts_left - 1, part, prefix, out);
        prefix.pop();
        part += 1;
    }
}

/// Each partition `L` of `n` into `k` parts with its contribution
/// `b(L)·Π f(λ)` to `F^Δ(n,k)`.
pub fn multiset_terms(f: &IntSeries, n: usize, k: usize) -> Result<Vec<(PartMultiset, BigInt)>> {
    f.require_order(n)?;
    Ok(enumerate_part_multisets(n, k)
        .into_iter()
        .map(|l| {
            let term = BigInt::from(multinomial_count(&l)) * l.product(f);
            (l, term)
        })
        .collect())
}

/// `F^Δ(n,k)` as `Σ_L b(L)·Π f(λ)` over partitions of `n` into `k` parts.
pub fn compositae_by_multisets(f: &IntSeries, n: usize, k: usize) -> Result<BigInt> {
    Ok(multiset_terms(f, n, k)?.into_iter().map(|(_, t)| t).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::geometric_inverse;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn ms(parts: &[usize]) -> PartMultiset {
        PartMultiset::new(parts.to_vec()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn c(n: u64, k: u64) -> BigInt {
        BigInt::from(binomial(n, k))
    }

    fn ones(order: usize) -> IntSeries {
        IntSeries::from_fn(order, |_| BigInt::one()).unwrap()
    }

    fn fib_gf(order: usize) -> IntSeries {
        IntSeries::from_values([1, 1])
            .unwrap()
            .with_order(order)
            .unwrap()
    }

    #[test]
    fn ones_gives_pascal() {
        let t = compositae_dp(&ones(10), 10).unwrap();
        for n in 1..=10 {
            for k in 1..=n {
                assert_eq!(t.get(n, k), &c(n as u64 - 1, k as u64 - 1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn x_plus_x2_gives_shifted_binomial() {
        let t = compositae_dp(&fib_gf(12), 12).unwrap();
        assert_eq!(t.get(4, 3), &big(3));
        for n in 1..=12u64 {
            for k in 1..=n {
                let expected = if n - k <= k {
                    c(k, n - k)
                } else {
                    BigInt::zero()
                };
                assert_eq!(t.get(n as usize, k as usize), &expected);
            }
        }
    }

    #[test]
    fn shifted_catalan() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        let f = IntSeries::from_values(catalan).unwrap();
        let t = compositae_dp(&f, 10).unwrap();
        assert_eq!(t.get(3, 2), &big(2));
        for n in 1..=10u64 {
            for k in 1..=n {
                // (k/n)·C(2n-k-1, n-1)
                let expected = BigInt::from(k) * c(2 * n - k - 1, n - 1) / BigInt::from(n);
                assert_eq!(t.get(n as usize, k as usize), &expected);
            }
        }
    }

    #[test]
    fn table_shape_and_diagonals() {
        let f = IntSeries::from_values([3, -1, 4, 1, -5]).unwrap();
        let t = compositae_dp(&f, 5).unwrap();
        for n in 1..=5 {
            assert_eq!(t.get(n, 1), f.coeff(n));
            assert_eq!(t.get(n, n), &big(3).pow(n as u32));
            assert_eq!(t.row(n).len(), n);
        }
        assert_eq!(t.entry(2, 3), None);
        assert_eq!(t.entry(6, 1), None);
        assert_eq!(t.entry(0, 0), None);
        assert_eq!(
            compositae_dp(&f, 6),
            Err(Error::InsufficientOrder {
                needed: 6,
                available: 5
            })
        );
    }

    #[test]
    fn bruteforce_examples() {
        let primes1 = IntSeries::from_values([1, 2, 3, 5, 7, 11]).unwrap();
        assert_eq!(compositae_bruteforce(&primes1, 6, 2).unwrap(), big(43));
        assert_eq!(compositae_bruteforce(&primes1, 6, 6).unwrap(), big(1));
        let f = IntSeries::from_values([-2, 7, 1]).unwrap();
        assert_eq!(compositae_bruteforce(&f, 3, 3).unwrap(), big(-8));
        assert_eq!(compositae_bruteforce(&fib_gf(6), 6, 4).unwrap(), big(6));
        assert_eq!(compositae_bruteforce(&fib_gf(6), 3, 4).unwrap(), big(0));
        assert_eq!(
            compositae_bruteforce(&ones(30), 26, 2),
            Err(Error::EnumerationTooLarge {
                n: 26,
                cap: BRUTEFORCE_CAP
            })
        );
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_count(&ms(&[1, 4])), BigUint::from(2u32));
        assert_eq!(multinomial_count(&ms(&[1, 1, 3])), BigUint::from(3u32));
        assert_eq!(multinomial_count(&ms(&[7])), BigUint::one());
        assert_eq!(multinomial_count(&ms(&[1, 1, 2, 2])), BigUint::from(6u32));
        assert_eq!(multinomial_count(&ms(&[3, 1, 2])), BigUint::from(6u32));
    }

    #[test]
    fn multiset_validation() {
        assert!(PartMultiset::new(vec![]).is_err());
        assert!(PartMultiset::new(vec![2, 0]).is_err());
        let l = ms(&[3, 1, 3, 2]);
        assert_eq!(l.parts(), &[1, 2, 3, 3]);
        assert_eq!((l.n(), l.k()), (9, 4));
        assert_eq!(l.multiplicities(), vec![(1, 1), (2, 1), (3, 2)]);
        assert_eq!(l.to_string(), "{1,2,3,3}");
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(
            enumerate_part_multisets(5, 2),
            vec![ms(&[1, 4]), ms(&[2, 3])]
        );
        assert_eq!(enumerate_part_multisets(4, 4), vec![ms(&[1, 1, 1, 1])]);
        assert_eq!(
            enumerate_part_multisets(6, 3),
            vec![ms(&[1, 1, 4]), ms(&[1, 2, 3]), ms(&[2, 2, 2])]
        );
        assert!(enumerate_part_multisets(3, 4).is_empty());
        // p(12) = 77
        let total: usize = (1..=12)
            .map(|k| enumerate_part_multisets(12, k).len())
            .sum();
        assert_eq!(total, 77);
    }

    #[test]
    fn composition_counts_from_multisets() {
        for n in 1..=14usize {
            for k in 1..=n {
                let total: BigUint = enumerate_part_multisets(n, k)
                    .iter()
                    .map(multinomial_count)
                    .sum();
                assert_eq!(BigInt::from(total), c(n as u64 - 1, k as u64 - 1));
            }
        }
    }

    #[test]
    fn n_times_count_divisible_by_k() {
        for n in 1..=20usize {
            for k in 1..=n {
                for l in enumerate_part_multisets(n, k) {
                    let b = multinomial_count(&l) * BigUint::from(n);
                    assert!(b.is_multiple_of(&BigUint::from(k)), "n={n} L={l}");
                }
            }
        }
    }

    #[test]
    fn table_json_uses_strings() {
        let t = compositae_dp(&ones(3), 3).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"order":3,"rows":[["1"],["1","1"],["1","2","1"]]}"#
        );
        assert_eq!(serde_json::from_str::<CompositaeTable>(&json).unwrap(), t);
    }

    fn small_series(max_order: usize) -> impl Strategy<Value = IntSeries> {
        prop::collection::vec(-9i64..=9, 1..=max_order)
            .prop_map(|v| IntSeries::from_values(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn dp_matches_bruteforce_and_multisets(f in small_series(12)) {
            let n_max = f.order();
            let t = compositae_dp(&f, n_max).unwrap();
            for n in 1..=n_max {
                for k in 1..=n {
                    prop_assert_eq!(t.get(n, k), &compositae_bruteforce(&f, n, k).unwrap());
                    prop_assert_eq!(t.get(n, k), &compositae_by_multisets(&f, n, k).unwrap());
                }
            }
        }

        #[test]
        fn row_sums_match_geometric_inverse(f in small_series(16)) {
            let t = compositae_dp(&f, f.order()).unwrap();
            let h = geometric_inverse(&f);
            for n in 1..=f.order() {
                prop_assert_eq!(h.coeff(n).to_integer().unwrap(), t.row_sum(n));
            }
        }
    }
}
