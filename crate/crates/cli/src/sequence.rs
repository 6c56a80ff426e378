//! Named integer sequences the CLI can materialize as [`IntSeries`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use loggf::primality::first_primes;
use loggf::{BigInt, IntSeries};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// `f(i) = 1`.
    Ones,
    /// `f(1) = 1`, then the primes 2, 3, 5, 7, ... at indices 2, 3, 4, ...
    Primes1,
    /// `x + x²`.
    FibGf,
    /// `f(n) = C_{n-1}`, the Catalan numbers shifted by one.
    CatalanShifted,
    File(PathBuf),
    /// Listed coefficients, zero beyond the list.
    Inline(Vec<BigInt>),
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::Ones => f.write_str("ones"),
            SequenceKind::Primes1 => f.write_str("primes1"),
            SequenceKind::FibGf => f.write_str("fib-gf"),
            SequenceKind::CatalanShifted => f.write_str("catalan-shifted"),
            SequenceKind::File(p) => write!(f, "file:{}", p.display()),
            SequenceKind::Inline(values) => {
                let list: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "inline:{}", list.join(","))
            }
        }
    }
}

impl FromStr for SequenceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ones" => return Ok(SequenceKind::Ones),
            "primes1" => return Ok(SequenceKind::Primes1),
            "fib-gf" => return Ok(SequenceKind::FibGf),
            "catalan-shifted" => return Ok(SequenceKind::CatalanShifted),
            _ => {}
        }
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err("file: needs a path".into());
            }
            return Ok(SequenceKind::File(PathBuf::from(path)));
        }
        if let Some(list) = s.strip_prefix("inline:") {
            let values = list
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<BigInt>()
                        .map_err(|_| format!("bad inline coefficient {v:?}"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(SequenceKind::Inline(values));
        }
        Err(format!(
            "unknown sequence {s:?} (expected ones, primes1, fib-gf, catalan-shifted, file:<path>, inline:<list>)"
        ))
    }
}

/// A sequence together with the truncation order to build it at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub order: usize,
}

fn catalan_shifted(order: usize) -> Vec<BigInt> {
    // C_{m+1} = C_m · 2(2m+1)/(m+2)
    let mut out = Vec::with_capacity(order);
    let mut c = BigInt::from(1);
    for m in 0..order as u64 {
        out.push(c.clone());
        c = c * (2 * (2 * m + 1)) / (m + 2);
    }
    out
}

impl SequenceSpec {
    pub fn new(kind: SequenceKind, order: usize) -> Self {
        SequenceSpec { kind, order }
    }

    pub fn materialize(&self) -> Result<IntSeries, CliError> {
        let order = self.order;
        if order == 0 {
            return Err(CliError::Usage("order must be positive".into()));
        }
        let series = match &self.kind {
            SequenceKind::Ones => IntSeries::from_fn(order, |_| BigInt::from(1))?,
            SequenceKind::Primes1 => {
                let primes = first_primes(order - 1);
                IntSeries::from_fn(order, |n| {
                    if n == 1 {
                        BigInt::from(1)
                    } else {
                        BigInt::from(primes[n - 2])
                    }
                })?
            }
            SequenceKind::FibGf => IntSeries::from_values([1, 1])?.with_order(order)?,
            SequenceKind::CatalanShifted => IntSeries::from_values(catalan_shifted(order))?,
            SequenceKind::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                IntSeries::parse_coefficients(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
                    .with_order(order)?
            }
            SequenceKind::Inline(values) => {
                IntSeries::from_values(values.iter().cloned())?.with_order(order)?
            }
        };
        Ok(series)
    }
}
