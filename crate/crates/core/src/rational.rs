//! Exact rationals and their JSON form `{"num": int, "den": int}`.
//!
//! Small rationals (weights) use `Ratio<i64>`; the linear algebra behind the
//! stability test runs on `BigRational`. Big integers that do not fit an
//! `i64` are written as decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = Ratio<i64>;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Text(String),
}

impl IntRepr {
    fn from_big(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(x) => IntRepr::Small(x),
            None => IntRepr::Text(v.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            IntRepr::Small(x) => Ok(BigInt::from(*x)),
            IntRepr::Text(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RatRepr {
    num: IntRepr,
    den: IntRepr,
}

fn big_to_repr(q: &BigRational) -> RatRepr {
    RatRepr { num: IntRepr::from_big(q.numer()), den: IntRepr::from_big(q.denom()) }
}

fn repr_to_big(r: RatRepr) -> Result<BigRational, String> {
    let den = r.den.to_big()?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(r.num.to_big()?, den))
}

pub fn q_to_big(q: Q) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

/// Converts back to a small rational when both parts fit.
pub fn big_to_q(q: &BigRational) -> Option<Q> {
    Some(Q::new(q.numer().to_i64()?, q.denom().to_i64()?))
}

pub mod q {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        big_to_repr(&q_to_big(*v)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let big = repr_to_big(RatRepr::deserialize(d)?).map_err(D::Error::custom)?;
        big_to_q(&big).ok_or_else(|| D::Error::custom("rational does not fit in 64 bits"))
    }
}

pub mod q_map {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BTreeMap<String, Q>, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<&String, RatRepr> =
            v.iter().map(|(k, x)| (k, big_to_repr(&q_to_big(*x)))).collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Q>, D::Error> {
        BTreeMap::<String, RatRepr>::deserialize(d)?
            .into_iter()
            .map(|(k, r)| {
                let big = repr_to_big(r).map_err(D::Error::custom)?;
                let q = big_to_q(&big)
                    .ok_or_else(|| D::Error::custom("rational does not fit in 64 bits"))?;
                Ok((k, q))
            })
            .collect()
    }
}

pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        big_to_repr(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        repr_to_big(RatRepr::deserialize(d)?).map_err(D::Error::custom)
    }
}

pub mod big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(big_to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<RatRepr>::deserialize(d)?
            .into_iter()
            .map(|r| repr_to_big(r).map_err(D::Error::custom))
            .collect()
    }
}

pub mod big_pair_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[(BigRational, BigRational)],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|(a, b)| [big_to_repr(a), big_to_repr(b)])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(BigRational, BigRational)>, D::Error> {
        Vec::<[RatRepr; 2]>::deserialize(d)?
            .into_iter()
            .map(|[a, b]| {
                Ok((
                    repr_to_big(a).map_err(D::Error::custom)?,
                    repr_to_big(b).map_err(D::Error::custom)?,
                ))
            })
            .collect()
    }
}

/// Serialises a weight map in the `{"num", "den"}` form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QMap(#[serde(with = "q_map")] pub BTreeMap<String, Q>);

/// Serialises a big rational in the `{"num", "den"}` form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BigQ(#[serde(with = "big")] pub BigRational);
