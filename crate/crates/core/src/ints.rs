//! JSON encoding for big integers: numbers when they fit in `i64`, decimal
//! strings otherwise. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ints(pub Vec<Int>);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Num(i64),
    Text(String),
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(Int(BigInt::from(x))),
            Repr::Text(t) => t.trim().parse().map(Int).map_err(D::Error::custom),
        }
    }
}

/// Serde adapter for `BigInt` fields: `#[serde(with = "crate::ints::big")]`.
pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Int(x.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Int::deserialize(d).map(|i| i.0)
    }
}

/// Serde adapter for `Vec<BigInt>` fields.
pub mod big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        Ints::from(x.to_vec()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ints::deserialize(d).map(Vec::from)
    }
}

impl From<Vec<BigInt>> for Ints {
    fn from(v: Vec<BigInt>) -> Self {
        Ints(v.into_iter().map(Int).collect())
    }
}

impl From<Ints> for Vec<BigInt> {
    fn from(v: Ints) -> Self {
        v.0.into_iter().map(|i| i.0).collect()
    }
}
