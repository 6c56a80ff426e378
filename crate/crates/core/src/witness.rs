//! One-sided compositeness witnesses derived from the prime-only integrality
//! of `Σ_{k<n} F^Δ(n,k)/k`, and an exhaustive pseudoprime scanner.
//!
//! Every witness reduces some integer quantity modulo `n`; a nonzero residue
//! proves `n` composite, a zero residue proves nothing.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primality::{is_prime, mul_mod, pow_mod, primes_up_to};
use crate::series::{geometric_inverse_coeffs, IntSeries};

/// Default ceiling for [`witness_central_binomial`]: the binomial is
/// materialized exactly.
pub const CENTRAL_BINOMIAL_BOUND: u64 = 100_000;

const SCAN_CHUNK: u64 = 512;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WitnessId {
    Fermat2,
    Lucas,
    CentralBinomial,
    Generic(String),
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessId::Fermat2 => f.write_str("fermat2"),
            WitnessId::Lucas => f.write_str("lucas"),
            WitnessId::CentralBinomial => f.write_str("central-binomial"),
            WitnessId::Generic(id) => write!(f, "generic({id})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown witness {0:?} (expected fermat2, lucas, central-binomial or generic(<id>))")]
pub struct ParseWitnessIdError(String);

impl FromStr for WitnessId {
    type Err = ParseWitnessIdError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fermat2" => Ok(WitnessId::Fermat2),
            "lucas" => Ok(WitnessId::Lucas),
            "central-binomial" => Ok(WitnessId::CentralBinomial),
            _ => s
                .strip_prefix("generic(")
                .and_then(|rest| rest.strip_suffix(')'))
                .map(|id| WitnessId::Generic(id.to_string()))
                .ok_or_else(|| ParseWitnessIdError(s.to_string())),
        }
    }
}

impl Serialize for WitnessId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WitnessId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Passes,
    CompositeWitnessed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Passes => "passes",
            Verdict::CompositeWitnessed => "composite-witnessed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub n: u64,
    pub test: WitnessId,
    /// The tested quantity reduced into `[0, n)`.
    pub residue: u64,
    pub verdict: Verdict,
    pub is_prime_actual: bool,
    /// Set when the generic witness runs on a series with `f(1) = 0`.
    #[serde(default)]
    pub weak: bool,
}

impl WitnessReport {
    fn new(n: u64, test: WitnessId, residue: u64) -> Self {
        WitnessReport {
            n,
            test,
            residue,
            verdict: if residue == 0 {
                Verdict::Passes
            } else {
                Verdict::CompositeWitnessed
            },
            is_prime_actual: is_prime(n),
            weak: false,
        }
    }

    /// Composite, yet the witness passes.
    pub fn is_pseudoprime(&self) -> bool {
        self.verdict == Verdict::Passes && !self.is_prime_actual
    }

    /// Prime, yet the witness claims compositeness. Never expected.
    pub fn is_unsound(&self) -> bool {
        self.verdict == Verdict::CompositeWitnessed && self.is_prime_actual
    }
}

fn require_n(n: u64) -> Result<()> {
    if n < 2 {
        Err(Error::NTooSmall(n))
    } else {
        Ok(())
    }
}

/// Residue of `2ⁿ − 2` modulo `n`.
pub fn witness_fermat2(n: u64) -> Result<WitnessReport> {
    require_n(n)?;
    let residue = (pow_mod(2, n, n) + n - 2 % n) % n;
    Ok(WitnessReport::new(n, WitnessId::Fermat2, residue))
}

/// Commutative ring the Fibonacci doubling runs over.
trait Ring {
    type Elem: Clone;
    fn small(&self, v: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn small(&self, v: u64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
}

struct Modular(u64);

impl Ring for Modular {
    type Elem = u64;
    fn small(&self, v: u64) -> u64 {
        v % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
}

/// `(Fib(n), Fib(n+1))` by fast doubling.
fn fib_pair<R: Ring>(ring: &R, n: u64) -> (R::Elem, R::Elem) {
    let mut a = ring.small(0);
    let mut b = ring.small(1);
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        // F(2k) = F(k)·(2F(k+1) − F(k)), F(2k+1) = F(k)² + F(k+1)²
        let two_b = ring.add(&b, &b);
        let even = ring.mul(&a, &ring.sub(&two_b, &a));
        let odd = ring.add(&ring.mul(&a, &a), &ring.mul(&b, &b));
        if (n >> bit) & 1 == 1 {
            b = ring.add(&even, &odd);
            a = odd;
        } else {
            a = even;
            b = odd;
        }
    }
    (a, b)
}

/// `L(n) = Fib(n+1) + Fib(n−1) = 2·Fib(n+1) − Fib(n)`.
fn lucas_in<R: Ring>(ring: &R, n: u64) -> R::Elem {
    let (f, f1) = fib_pair(ring, n);
    ring.sub(&ring.add(&f1, &f1), &f)
}

/// Exact Lucas number `L(n)` (`L(0) = 2`, `L(1) = 1`).
pub fn lucas_number(n: u64) -> BigInt {
    lucas_in(&Integers, n)
}

/// Exact Fibonacci number `Fib(n)`.
pub fn fibonacci_number(n: u64) -> BigInt {
    fib_pair(&Integers, n).0
}

/// `L(n) mod m`, never materializing `L(n)`.
pub fn lucas_mod(n: u64, m: u64) -> u64 {
    assert!(m > 0, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    lucas_in(&Modular(m), n)
}

/// Residue of `L(n) − 1` modulo `n`.
pub fn witness_lucas(n: u64) -> Result<WitnessReport> {
    require_n(n)?;
    let residue = (lucas_mod(n, n) + n - 1) % n;
    Ok(WitnessReport::new(n, WitnessId::Lucas, residue))
}

fn legendre(mut m: u64, p: u64) -> u64 {
    let mut e = 0;
    while m > 0 {
        m /= p;
        e += m;
    }
    e
}

/// Exact `C(2n−1, n−1)` assembled from its prime factorization.
pub fn central_binomial(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let top = 2 * n - 1;
    let mut acc = BigUint::one();
    for p in primes_up_to(top) {
        let e = legendre(top, p) - legendre(n - 1, p) - legendre(n, p);
        if e > 0 {
            acc *= BigUint::from(p).pow(e as u32);
        }
    }
    acc
}

/// Residue of `C(2n−1, n−1) − 1` modulo `n`, for `n` up to the default bound.
pub fn witness_central_binomial(n: u64) -> Result<WitnessReport> {
    witness_central_binomial_bounded(n, CENTRAL_BINOMIAL_BOUND)
}

pub fn witness_central_binomial_bounded(n: u64, bound: u64) -> Result<WitnessReport> {
    require_n(n)?;
    if n > bound {
        return Err(Error::BinomialBoundExceeded { n, bound });
    }
    let c = central_binomial(n) % BigUint::from(n);
    let c = c.to_u64().expect("residue below n");
    let residue = (c + n - 1) % n;
    Ok(WitnessReport::new(n, WitnessId::CentralBinomial, residue))
}

/// Witness for an arbitrary integer series: `n·g(n) − f(1)ⁿ` modulo `n`,
/// with `n·g(n)` precomputed up to `max_n`.
///
/// `n·g(n)` is the coefficient of `x^{n-1}` in `F'(x)/(1 − F(x))`, so it is
/// accumulated as the integer convolution `Σ_{m=1}^{n} m·f(m)·h(n−m)`.
#[derive(Clone, Debug)]
pub struct GenericWitness {
    id: String,
    f1: BigInt,
    ng: Vec<BigInt>,
}

impl GenericWitness {
    pub fn new(id: impl Into<String>, f: &IntSeries, max_n: usize) -> Result<Self> {
        f.require_order(max_n)?;
        let h = geometric_inverse_coeffs(f, max_n);
        let weighted: Vec<(usize, BigInt)> = f
            .terms()
            .filter(|&(m, _)| m <= max_n)
            .map(|(m, fm)| (m, fm * BigInt::from(m)))
            .collect();
        let ng = (1..=max_n)
            .map(|n| {
                weighted
                    .iter()
                    .take_while(|(m, _)| *m <= n)
                    .map(|(m, w)| w * &h[n - m])
                    .sum()
            })
            .collect();
        Ok(GenericWitness {
            id: id.into(),
            f1: f.coeff(1).clone(),
            ng,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn max_n(&self) -> usize {
        self.ng.len()
    }

    /// `n·g(n)` for `1 ≤ n ≤ max_n`.
    pub fn ng(&self, n: usize) -> &BigInt {
        &self.ng[n - 1]
    }

    pub fn check(&self, n: u64) -> Result<WitnessReport> {
        require_n(n)?;
        let idx = n as usize;
        if idx > self.ng.len() {
            return Err(Error::InsufficientOrder {
                needed: idx,
                available: self.ng.len(),
            });
        }
        let modulus = BigInt::from(n);
        let ng = self.ng[idx - 1]
            .mod_floor(&modulus)
            .to_u64()
            .expect("reduced below n");
        let f1 = self
            .f1
            .mod_floor(&modulus)
            .to_u64()
            .expect("reduced below n");
        let residue = (ng + n - pow_mod(f1, n, n)) % n;
        let mut report = WitnessReport::new(n, WitnessId::Generic(self.id.clone()), residue);
        report.weak = self.f1.is_zero();
        Ok(report)
    }
}

/// Generic witness for a single `n`; requires `f.order() ≥ n`.
pub fn witness_generic(f: &IntSeries, n: u64) -> Result<WitnessReport> {
    require_n(n)?;
    GenericWitness::new("f", f, n as usize)?.check(n)
}

/// A witness ready to run at many `n`.
#[derive(Clone, Debug)]
pub enum WitnessTest {
    Fermat2,
    Lucas,
    CentralBinomial { bound: u64 },
    Generic(GenericWitness),
}

impl WitnessTest {
    pub fn central_binomial() -> Self {
        WitnessTest::CentralBinomial {
            bound: CENTRAL_BINOMIAL_BOUND,
        }
    }

    pub fn id(&self) -> WitnessId {
        match self {
            WitnessTest::Fermat2 => WitnessId::Fermat2,
            WitnessTest::Lucas => WitnessId::Lucas,
            WitnessTest::CentralBinomial { .. } => WitnessId::CentralBinomial,
            WitnessTest::Generic(g) => WitnessId::Generic(g.id.clone()),
        }
    }

    pub fn check(&self, n: u64) -> Result<WitnessReport> {
        match self {
            WitnessTest::Fermat2 => witness_fermat2(n),
            WitnessTest::Lucas => witness_lucas(n),
            WitnessTest::CentralBinomial { bound } => witness_central_binomial_bounded(n, *bound),
            WitnessTest::Generic(g) => g.check(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub lo: u64,
    pub hi: u64,
    pub test: WitnessId,
    /// Composite `n` in `[lo, hi]` the witness passes, ascending.
    pub pseudoprimes: Vec<u64>,
    pub primes_checked: u64,
    pub composites_checked: u64,
    /// Primes the witness rejected; any entry here is a bug.
    pub soundness_violations: Vec<u64>,
}

#[derive(Default)]
struct ChunkTally {
    pseudoprimes: Vec<u64>,
    violations: Vec<u64>,
    primes: u64,
    composites: u64,
}

fn scan_chunk(test: &WitnessTest, lo: u64, hi: u64) -> Result<ChunkTally> {
    let mut tally = ChunkTally::default();
    for n in lo..=hi {
        let report = test.check(n)?;
        if report.is_prime_actual {
            tally.primes += 1;
        } else {
            tally.composites += 1;
        }
        if report.is_pseudoprime() {
            tally.pseudoprimes.push(n);
        }
        if report.is_unsound() {
            tally.violations.push(n);
        }
    }
    Ok(tally)
}

/// Runs `test` on every `n` in `[lo, hi]`.
///
/// The range is split into disjoint chunks evaluated on a pool of `threads`
/// workers (`0` uses the global pool); the merged result does not depend on
/// the thread count.
pub fn scan_pseudoprimes(
    test: &WitnessTest,
    lo: u64,
    hi: u64,
    threads: usize,
) -> Result<ScanResult> {
    if lo < 2 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    let chunks: Vec<(u64, u64)> = (0..=(hi - lo) / SCAN_CHUNK)
        .map(|i| {
            let start = lo + i * SCAN_CHUNK;
            (start, hi.min(start + SCAN_CHUNK - 1))
        })
        .collect();
    let run = || -> Result<Vec<ChunkTally>> {
        chunks
            .par_iter()
            .map(|&(a, b)| scan_chunk(test, a, b))
            .collect()
    };
    let tallies = if threads == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?
            .install(run)?
    };

    let mut result = ScanResult {
        lo,
        hi,
        test: test.id(),
        pseudoprimes: Vec::new(),
        primes_checked: 0,
        composites_checked: 0,
        soundness_violations: Vec::new(),
    };
    for tally in tallies {
        result.pseudoprimes.extend(tally.pseudoprimes);
        result.soundness_violations.extend(tally.violations);
        result.primes_checked += tally.primes;
        result.composites_checked += tally.composites;
    }
    result.pseudoprimes.sort_unstable();
    result.soundness_violations.sort_unstable();
    Ok(result)
}
