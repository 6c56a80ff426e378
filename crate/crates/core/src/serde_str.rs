//! Serde adapters that encode big integers as decimal strings.
//!
//! JSON numbers are doubles for most consumers, so every arbitrary-precision
//! value crosses the wire as a string.

use std::fmt::Display;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

fn parse<T: FromStr, E: serde::de::Error>(s: &str) -> Result<T, E>
where
    T::Err: Display,
{
    s.parse().map_err(|e| E::custom(format!("{s:?}: {e}")))
}

pub mod decimal {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        parse(&s)
    }
}

pub mod decimal_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse(s))
            .collect()
    }
}

pub mod decimal_rows {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(rows: &[Vec<T>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            rows.iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<Vec<T>>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|row| row.iter().map(|s| parse(s)).collect())
            .collect()
    }
}

pub mod decimal_map {
    use std::collections::BTreeMap;

    use super::*;

    pub fn serialize<T: Display, S: Serializer>(
        map: &BTreeMap<usize, T>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_map(map.iter().map(|(k, v)| (k.to_string(), v.to_string())))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<BTreeMap<usize, T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        BTreeMap::<String, String>::deserialize(d)?
            .iter()
            .map(|(k, v)| {
                let k: usize = k.parse().map_err(D::Error::custom)?;
                Ok((k, parse(v)?))
            })
            .collect()
    }
}
