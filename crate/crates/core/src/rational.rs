//! Exact rational helpers shared by the symbolic modules: `{num, den}` JSON
//! and text formatting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// `{num, den}` with integers written as JSON numbers when they fit in i64
/// and as decimal strings otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: Value,
    pub den: Value,
}

fn int_value(i: &BigInt) -> Value {
    match i.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(i.to_string()),
    }
}

fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl From<&BigRational> for RationalJson {
    fn from(q: &BigRational) -> Self {
        RationalJson {
            num: int_value(q.numer()),
            den: int_value(q.denom()),
        }
    }
}

impl TryFrom<&RationalJson> for BigRational {
    type Error = String;

    fn try_from(j: &RationalJson) -> Result<Self, Self::Error> {
        let num = parse_int(&j.num).ok_or("numerator is not an integer")?;
        let den = parse_int(&j.den).ok_or("denominator is not an integer")?;
        if den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    }
}

/// `num/den` text, always with an explicit denominator.
pub fn ratio_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Short form: `-1/2`, `3`, `1`.
pub fn ratio_short(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        ratio_text(q)
    }
}

pub mod serde_ratio {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::RationalJson;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let j = RationalJson::deserialize(d)?;
        BigRational::try_from(&j).map_err(serde::de::Error::custom)
    }
}
