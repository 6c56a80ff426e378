use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigRat(BigRational);

impl BigRat {
    /// Builds `numer / denom`, reducing it.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        BigRat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        BigRat(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        BigRat(BigRational::zero())
    }

    pub fn one() -> Self {
        BigRat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        BigRat(self.0.recip())
    }
}

impl Default for BigRat {
    fn default() -> Self {
        BigRat::zero()
    }
}

impl From<BigInt> for BigRat {
    fn from(value: BigInt) -> Self {
        BigRat::from_integer(value)
    }
}

impl From<i64> for BigRat {
    fn from(value: i64) -> Self {
        BigRat::from_integer(value)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseBigRatError(String);

impl FromStr for BigRat {
    type Err = ParseBigRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseBigRatError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(BigRat::new(n, d))
            }
            None => s
                .parse::<BigInt>()
                .map(BigRat::from_integer)
                .map_err(|_| err()),
        }
    }
}

impl Serialize for BigRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BigRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &'a BigRat) -> BigRat {
                BigRat($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b BigRat> for &'a BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &'b BigRat) -> BigRat {
                BigRat($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&BigRat> for BigRat {
    fn add_assign(&mut self, rhs: &BigRat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for BigRat {
    fn add_assign(&mut self, rhs: BigRat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&BigRat> for BigRat {
    fn sub_assign(&mut self, rhs: &BigRat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&BigRat> for BigRat {
    fn mul_assign(&mut self, rhs: &BigRat) {
        self.0 *= &rhs.0;
    }
}

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-&self.0)
    }
}

impl Sum for BigRat {
    fn sum<I: Iterator<Item = BigRat>>(iter: I) -> Self {
        iter.fold(BigRat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a BigRat> for BigRat {
    fn sum<I: Iterator<Item = &'a BigRat>>(iter: I) -> Self {
        iter.fold(BigRat::zero(), |acc, x| acc + x)
    }
}
