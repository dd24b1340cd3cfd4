//! Big integers in JSON: plain numbers when they fit in 64 bits, decimal
//! strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Big(String),
}

fn to_repr(x: &BigInt) -> Repr {
    match x.to_i64() {
        Some(v) => Repr::Small(v),
        None => Repr::Big(x.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Small(v) => Ok(BigInt::from(v)),
        Repr::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
    }
}

pub mod one {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_repr(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }
}

pub mod list {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr::<D::Error>).collect()
    }
}
