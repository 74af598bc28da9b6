//! Serde adapters writing big numbers as decimal strings.

use std::fmt::Display;
use std::str::FromStr;

use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

fn parse<T: FromStr, E: Error>(s: &str) -> Result<T, E> {
    s.parse().map_err(|_| E::custom(format!("bad number {s:?}")))
}

pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
    parse(&String::deserialize(d)?)
}

pub mod vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse(s)).collect()
    }
}

/// `(small, big)` pairs such as `(q, count)`.
pub mod pairs {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[(u64, T)], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|(q, x)| (*q, x.to_string())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Vec<(u64, T)>, D::Error> {
        Vec::<(u64, String)>::deserialize(d)?
            .into_iter()
            .map(|(q, s)| Ok((q, parse(&s)?)))
            .collect()
    }
}
