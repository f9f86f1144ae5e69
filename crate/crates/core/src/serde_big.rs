//! Serialization of big integers as decimal strings.

use num_bigint::BigInt;
use serde::Serializer;

pub fn ser<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
