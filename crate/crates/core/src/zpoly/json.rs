//! JSON boundary: `{"var":"t","den":"<decimal>","coeffs":["<decimal>", ...]}`.
//!
//! Coefficients are ascending decimal strings without redundant leading
//! zeros. `den` is omitted for integer polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{IntPoly, RatPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub var: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<String>,
    pub coeffs: Vec<String>,
}

/// Parses a canonical decimal integer: optional `-`, no leading zeros, no `-0`.
pub fn parse_decimal(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && !(s.starts_with('-') && digits == "0");
    if !canonical {
        return Err(Error::Parse(format!("not a canonical decimal integer: {s:?}")));
    }
    s.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))
}

impl PolyJson {
    pub fn from_int(p: &IntPoly, var: &str) -> Self {
        PolyJson { var: var.to_string(), den: None, coeffs: p.coeffs().iter().map(ToString::to_string).collect() }
    }

    pub fn from_rat(p: &RatPoly, var: &str) -> Self {
        let mut json = Self::from_int(p.num(), var);
        if !p.den().is_one() {
            json.den = Some(p.den().to_string());
        }
        json
    }

    fn numerator(&self) -> Result<IntPoly> {
        let coeffs = self.coeffs.iter().map(|c| parse_decimal(c)).collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::from_coeffs(coeffs))
    }

    fn denominator(&self) -> Result<BigInt> {
        match &self.den {
            None => Ok(BigInt::one()),
            Some(d) => {
                let den = parse_decimal(d)?;
                if !den.is_positive() {
                    return Err(Error::Parse(format!("denominator must be positive, got {d}")));
                }
                Ok(den)
            }
        }
    }

    /// Converts to an integer polynomial; `den` must be absent or `"1"`.
    pub fn to_int(&self) -> Result<IntPoly> {
        if !self.denominator()?.is_one() {
            return Err(Error::Parse("integer polynomial has a non-unit denominator".into()));
        }
        self.numerator()
    }

    pub fn to_rat(&self) -> Result<RatPoly> {
        RatPoly::new(self.numerator()?, self.denominator()?)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from_int(self, "t").serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        PolyJson::deserialize(deserializer)?.to_int().map_err(serde::de::Error::custom)
    }
}

impl Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from_rat(self, "t").serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        PolyJson::deserialize(deserializer)?.to_rat().map_err(serde::de::Error::custom)
    }
}
