//! Arbitrary-precision rationals and their JSON encoding.
//!
//! The scalar type is `num_rational::BigRational`, which keeps values reduced
//! with a positive denominator. On the wire a rational is a two-element array
//! of decimal strings `["num", "den"]` so round trips are bit-exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat_from_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_zero() -> Rational {
    Rational::zero()
}

pub fn rat_one() -> Rational {
    Rational::one()
}

/// True iff the rational is an integer.
pub fn rat_is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// Extracts the integer value, failing on a proper fraction.
pub fn rat_to_bigint(r: &Rational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.numer().clone())
    } else {
        Err(Error::IntegralityViolation(format!("{r} is not an integer")))
    }
}

pub fn rat_is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}

/// Serde adapter: rational as `["num", "den"]` decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalJson(pub Rational);

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pair = [self.0.numer().to_string(), self.0.denom().to_string()];
        pair.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pair: [String; 2] = Deserialize::deserialize(deserializer)?;
        let num: BigInt = pair[0]
            .parse()
            .map_err(|e| D::Error::custom(format!("bad numerator {:?}: {e}", pair[0])))?;
        let den: BigInt = pair[1]
            .parse()
            .map_err(|e| D::Error::custom(format!("bad denominator {:?}: {e}", pair[1])))?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(RationalJson(Rational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = Rational::new(BigInt::from(-6), BigInt::from(4));
        let s = serde_json::to_string(&RationalJson(r.clone())).unwrap();
        assert_eq!(s, r#"["-3","2"]"#);
        let back: RationalJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, r);
    }

    #[test]
    fn reduced_on_parse() {
        let back: RationalJson = serde_json::from_str(r#"["10","-4"]"#).unwrap();
        assert_eq!(back.0, Rational::new(BigInt::from(-5), BigInt::from(2)));
    }
}
