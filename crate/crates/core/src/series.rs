//! Truncated power series with exact coefficients.
//!
//! Every series carries its truncation order `N` explicitly. Coefficients are
//! stored sparsely: an absent index means a zero coefficient. Binary
//! operations truncate to the smaller of the two orders.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::BigRat;
use crate::serde_str;

static RAT_ZERO: LazyLock<BigRat> = LazyLock::new(BigRat::zero);

/// `Σ_{n=1}^{N} f(n) xⁿ` with integer coefficients and no constant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries<BigInt>", into = "RawSeries<BigInt>")]
pub struct IntSeries {
    order: usize,
    coeffs: BTreeMap<usize, BigInt>,
}

/// `Σ_{n=0}^{N} c(n) xⁿ` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries<BigRat>", into = "RawSeries<BigRat>")]
pub struct RatSeries {
    order: usize,
    coeffs: BTreeMap<usize, BigRat>,
}

/// Logarithmic series `Σ_{n=1}^{N} a(n)/n · xⁿ`, stored by its integer
/// numerators `a(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries<BigInt>", into = "RawSeries<BigInt>")]
pub struct LogSeries {
    order: usize,
    a: BTreeMap<usize, BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: std::fmt::Display",
    deserialize = "T: std::str::FromStr, T::Err: std::fmt::Display"
))]
struct RawSeries<T> {
    order: usize,
    #[serde(with = "serde_str::decimal_map")]
    coeffs: BTreeMap<usize, T>,
}

fn sparse_int(
    order: usize,
    terms: impl IntoIterator<Item = (usize, BigInt)>,
) -> Result<BTreeMap<usize, BigInt>> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut coeffs = BTreeMap::new();
    for (index, value) in terms {
        if index == 0 || index > order {
            return Err(Error::IndexOutOfRange { index, order });
        }
        if !value.is_zero() {
            coeffs.insert(index, value);
        }
    }
    Ok(coeffs)
}

impl IntSeries {
    /// The zero series of the given order.
    pub fn zero(order: usize) -> Result<Self> {
        Self::from_terms(order, [])
    }

    /// Builds a series from `(index, value)` pairs; indices must lie in `1..=order`.
    pub fn from_terms(
        order: usize,
        terms: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Result<Self> {
        Ok(IntSeries {
            order,
            coeffs: sparse_int(order, terms)?,
        })
    }

    /// Builds `f(1), ..., f(order)` from a closure.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> BigInt) -> Result<Self> {
        Self::from_terms(order, (1..=order).map(|n| (n, f(n))))
    }

    /// `values[i]` is `f(i + 1)`; the order is `values.len()`.
    pub fn from_values<T: Into<BigInt>>(values: impl IntoIterator<Item = T>) -> Result<Self> {
        let values: Vec<BigInt> = values.into_iter().map(Into::into).collect();
        Self::from_terms(
            values.len(),
            values.into_iter().enumerate().map(|(i, v)| (i + 1, v)),
        )
    }

    /// The same coefficients re-truncated (or zero-padded) to `order`.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::from_terms(
            order,
            self.coeffs.range(..=order).map(|(&n, v)| (n, v.clone())),
        )
    }

    /// Parses the coefficient file format: one integer per line, line `i` is
    /// `f(i)`. Blank lines and `#` comments are skipped and do not advance `i`.
    pub fn parse_coefficients(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let value: BigInt = content.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("expected an integer, found {content:?}"),
            })?;
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no coefficients found".into(),
            });
        }
        Self::from_values(values)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `f(n)`; zero for indices outside `1..=order`.
    pub fn coeff(&self, n: usize) -> &BigInt {
        self.coeffs.get(&n).unwrap_or(&BigInt::ZERO)
    }

    /// Nonzero terms in increasing index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&n, v)| (n, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn require_order(&self, needed: usize) -> Result<()> {
        if needed > self.order {
            Err(Error::InsufficientOrder {
                needed,
                available: self.order,
            })
        } else {
            Ok(())
        }
    }

    pub fn to_rat_series(&self) -> RatSeries {
        RatSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&n, v)| (n, BigRat::from_integer(v.clone())))
                .collect(),
        }
    }
}

impl TryFrom<RawSeries<BigInt>> for IntSeries {
    type Error = Error;
    fn try_from(raw: RawSeries<BigInt>) -> Result<Self> {
        Self::from_terms(raw.order, raw.coeffs)
    }
}

impl From<IntSeries> for RawSeries<BigInt> {
    fn from(s: IntSeries) -> Self {
        RawSeries {
            order: s.order,
            coeffs: s.coeffs,
        }
    }
}

impl RatSeries {
    pub fn zero(order: usize) -> Self {
        RatSeries {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series `value`.
    pub fn constant(order: usize, value: BigRat) -> Self {
        let mut s = Self::zero(order);
        if !value.is_zero() {
            s.coeffs.insert(0, value);
        }
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRat::one())
    }

    /// Builds a series from `(index, value)` pairs; indices must lie in `0..=order`.
    pub fn from_terms(
        order: usize,
        terms: impl IntoIterator<Item = (usize, BigRat)>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (index, value) in terms {
            if index > order {
                return Err(Error::IndexOutOfRange { index, order });
            }
            if !value.is_zero() {
                coeffs.insert(index, value);
            }
        }
        Ok(RatSeries { order, coeffs })
    }

    /// Builds `c(0), ..., c(order)` from a closure.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> BigRat) -> Self {
        let coeffs = (0..=order)
            .map(|n| (n, f(n)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        RatSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &BigRat {
        self.coeffs.get(&n).unwrap_or(&RAT_ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRat)> + '_ {
        self.coeffs.iter().map(|(&n, v)| (n, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(BigRat::is_integer)
    }

    pub fn truncate(&self, order: usize) -> Self {
        RatSeries {
            order: order.min(self.order),
            coeffs: self
                .coeffs
                .range(..=order)
                .map(|(&n, v)| (n, v.clone()))
                .collect(),
        }
    }
}

impl TryFrom<RawSeries<BigRat>> for RatSeries {
    type Error = Error;
    fn try_from(raw: RawSeries<BigRat>) -> Result<Self> {
        Self::from_terms(raw.order, raw.coeffs)
    }
}

impl From<RatSeries> for RawSeries<BigRat> {
    fn from(s: RatSeries) -> Self {
        RawSeries {
            order: s.order,
            coeffs: s.coeffs,
        }
    }
}

impl LogSeries {
    pub fn from_terms(
        order: usize,
        terms: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Result<Self> {
        Ok(LogSeries {
            order,
            a: sparse_int(order, terms)?,
        })
    }

    pub fn from_fn(order: usize, mut a: impl FnMut(usize) -> BigInt) -> Result<Self> {
        Self::from_terms(order, (1..=order).map(|n| (n, a(n))))
    }

    /// `values[i]` is `a(i + 1)`.
    pub fn from_values<T: Into<BigInt>>(values: impl IntoIterator<Item = T>) -> Result<Self> {
        let values: Vec<BigInt> = values.into_iter().map(Into::into).collect();
        Self::from_terms(
            values.len(),
            values.into_iter().enumerate().map(|(i, v)| (i + 1, v)),
        )
    }

    /// `a(k) = 1` for every k, i.e. `-ln(1 - x)`.
    pub fn ones(order: usize) -> Result<Self> {
        Self::from_fn(order, |_| BigInt::one())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn a(&self, n: usize) -> &BigInt {
        self.a.get(&n).unwrap_or(&BigInt::ZERO)
    }

    /// `a(n)/n`, zero at `n = 0`.
    pub fn coeff(&self, n: usize) -> BigRat {
        if n == 0 {
            BigRat::zero()
        } else {
            BigRat::new(self.a(n).clone(), n as u64)
        }
    }

    pub fn to_rat_series(&self) -> RatSeries {
        RatSeries {
            order: self.order,
            coeffs: self
                .a
                .iter()
                .map(|(&n, v)| (n, BigRat::new(v.clone(), n as u64)))
                .collect(),
        }
    }
}

impl TryFrom<RawSeries<BigInt>> for LogSeries {
    type Error = Error;
    fn try_from(raw: RawSeries<BigInt>) -> Result<Self> {
        Self::from_terms(raw.order, raw.coeffs)
    }
}

impl From<LogSeries> for RawSeries<BigInt> {
    fn from(s: LogSeries) -> Self {
        RawSeries {
            order: s.order,
            coeffs: s.a,
        }
    }
}

pub fn series_add(p: &RatSeries, q: &RatSeries) -> RatSeries {
    let order = p.order.min(q.order);
    let mut out = p.truncate(order);
    for (&n, v) in q.coeffs.range(..=order) {
        let sum = out.coeff(n) + v;
        if sum.is_zero() {
            out.coeffs.remove(&n);
        } else {
            out.coeffs.insert(n, sum);
        }
    }
    out
}

pub fn series_sub(p: &RatSeries, q: &RatSeries) -> RatSeries {
    let neg = RatSeries {
        order: q.order,
        coeffs: q.coeffs.iter().map(|(&n, v)| (n, -v)).collect(),
    };
    series_add(p, &neg)
}

/// Cauchy product truncated at the smaller order.
pub fn series_mul(p: &RatSeries, q: &RatSeries) -> RatSeries {
    let order = p.order.min(q.order);
    let mut acc: BTreeMap<usize, BigRat> = BTreeMap::new();
    for (&i, a) in p.coeffs.range(..=order) {
        for (&j, b) in q.coeffs.range(..=order - i) {
            *acc.entry(i + j).or_default() += a * b;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    RatSeries { order, coeffs: acc }
}

/// Formal derivative; the result has order `N - 1`.
pub fn series_derivative(p: &RatSeries) -> Result<RatSeries> {
    if p.order == 0 {
        return Err(Error::DerivativeOfOrderZero);
    }
    let coeffs = p
        .coeffs
        .iter()
        .filter(|(&n, _)| n > 0)
        .map(|(&n, v)| (n - 1, v * &BigRat::from_integer(n as u64)))
        .collect();
    Ok(RatSeries {
        order: p.order - 1,
        coeffs,
    })
}

/// Integer coefficients `h(0..=order)` of `1 / (1 - F(x))`.
///
/// `h(0) = 1`, `h(n) = Σ_{m=1}^{n} f(m) h(n - m)`.
pub(crate) fn geometric_inverse_coeffs(f: &IntSeries, order: usize) -> Vec<BigInt> {
    let mut h = Vec::with_capacity(order + 1);
    h.push(BigInt::one());
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for (m, fm) in f.coeffs.range(1..=n) {
            acc += fm * &h[n - m];
        }
        h.push(acc);
    }
    h
}

/// `H(x) = 1 / (1 - F(x))` at the order of `f`. Every coefficient is an integer.
pub fn geometric_inverse(f: &IntSeries) -> RatSeries {
    let h = geometric_inverse_coeffs(f, f.order);
    RatSeries::from_fn(f.order, |n| BigRat::from_integer(h[n].clone()))
}
