//! Serde helpers for arbitrary-precision integers.
//!
//! Integers that fit in an `i64` are written as JSON numbers; larger ones as
//! decimal strings. Both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer with the compact JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z(pub BigInt);

impl From<BigInt> for Z {
    fn from(v: BigInt) -> Self {
        Z(v)
    }
}

impl From<&BigInt> for Z {
    fn from(v: &BigInt) -> Self {
        Z(v.clone())
    }
}

impl Serialize for Z {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct ZVisitor;

impl<'de> Visitor<'de> for ZVisitor {
    type Value = Z;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Z, E> {
        Ok(Z(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Z, E> {
        Ok(Z(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Z, E> {
        v.parse::<BigInt>()
            .map(Z)
            .map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Z {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Z, D::Error> {
        d.deserialize_any(ZVisitor)
    }
}

/// `#[serde(with = "bigint_compact")]` for plain `BigInt` fields.
pub mod bigint_compact {
    use super::Z;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Z(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Z::deserialize(d).map(|z| z.0)
    }
}

pub fn zvec(v: &[BigInt; 3]) -> [Z; 3] {
    std::array::from_fn(|i| Z(v[i].clone()))
}

pub fn zmat(m: &[[BigInt; 3]; 3]) -> [[Z; 3]; 3] {
    std::array::from_fn(|i| zvec(&m[i]))
}

pub fn unz(v: &[Z; 3]) -> [BigInt; 3] {
    std::array::from_fn(|i| v[i].0.clone())
}

pub fn unzmat(m: &[[Z; 3]; 3]) -> [[BigInt; 3]; 3] {
    std::array::from_fn(|i| unz(&m[i]))
}
