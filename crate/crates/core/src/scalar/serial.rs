//! JSON encoding of scalars: `{"num": [[exp, coeff], ...], "den": [[exp, coeff], ...]}`.
//!
//! Coefficients are written as JSON integers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Laurent, Scalar};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Coeff(BigInt);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Coeff(BigInt::from(v))),
            Raw::Str(s) => s
                .trim()
                .parse()
                .map(Coeff)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// List of `[exponent, coefficient]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentRepr(Vec<(i32, Coeff)>);

impl From<&Laurent> for LaurentRepr {
    fn from(l: &Laurent) -> Self {
        LaurentRepr(
            l.terms()
                .iter()
                .map(|(e, c)| (*e, Coeff(c.clone())))
                .collect(),
        )
    }
}

impl From<&LaurentRepr> for Laurent {
    fn from(r: &LaurentRepr) -> Self {
        Laurent::from_terms(r.0.iter().map(|(e, c)| (*e, c.0.clone())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarRepr {
    pub num: LaurentRepr,
    pub den: LaurentRepr,
}

impl From<&Scalar> for ScalarRepr {
    fn from(s: &Scalar) -> Self {
        ScalarRepr {
            num: s.numer().into(),
            den: s.denom().into(),
        }
    }
}

impl TryFrom<&ScalarRepr> for Scalar {
    type Error = Error;
    fn try_from(r: &ScalarRepr) -> Result<Self, Error> {
        Scalar::from_parts((&r.num).into(), (&r.den).into())
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        Scalar::try_from(&r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodes_pairs() {
        let s = &Scalar::q() - &Scalar::q_pow(-1);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"num":[[-1,-1],[1,1]],"den":[[0,1]]}"#);
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn big_coefficients_go_through_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = Scalar::laurent(Laurent::monomial(2, big));
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"123456789012345678901234567890\""));
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), s);
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let r = r#"{"num":[[0,1]],"den":[]}"#;
        assert!(serde_json::from_str::<Scalar>(r).is_err());
    }
}
