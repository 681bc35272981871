use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// An element of the min-plus semiring: an exact rational or `+∞`.
///
/// Tropical addition is [`TropScalar::oplus`] (minimum) and tropical
/// multiplication is ordinary addition, exposed through `+` with `∞`
/// absorbing. The derived order places every finite value below `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropScalar {
    Finite(BigRational),
    Infinity,
}

impl TropScalar {
    pub fn zero() -> Self {
        TropScalar::Finite(BigRational::zero())
    }

    pub fn infinity() -> Self {
        TropScalar::Infinity
    }

    pub fn from_int(v: i64) -> Self {
        TropScalar::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        TropScalar::Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropScalar::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TropScalar::Finite(v) if v.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, TropScalar::Finite(v) if v.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            TropScalar::Finite(v) => Some(v),
            TropScalar::Infinity => None,
        }
    }

    /// Tropical sum: the minimum.
    pub fn oplus(&self, other: &Self) -> Self {
        match self.cmp(other) {
            Ordering::Greater => other.clone(),
            _ => self.clone(),
        }
    }

    /// Tropical product: the ordinary sum, with `∞` absorbing.
    pub fn otimes(&self, other: &Self) -> Self {
        self + other
    }
}

impl Add for &TropScalar {
    type Output = TropScalar;

    fn add(self, rhs: &TropScalar) -> TropScalar {
        match (self, rhs) {
            (TropScalar::Finite(a), TropScalar::Finite(b)) => TropScalar::Finite(a + b),
            _ => TropScalar::Infinity,
        }
    }
}

impl Add for TropScalar {
    type Output = TropScalar;

    fn add(self, rhs: TropScalar) -> TropScalar {
        &self + &rhs
    }
}

impl From<BigRational> for TropScalar {
    fn from(v: BigRational) -> Self {
        TropScalar::Finite(v)
    }
}

impl From<i64> for TropScalar {
    fn from(v: i64) -> Self {
        TropScalar::from_int(v)
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::Infinity => f.write_str("inf"),
            TropScalar::Finite(v) if v.is_integer() => write!(f, "{}", v.numer()),
            TropScalar::Finite(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

impl FromStr for TropScalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "inf" | "Inf" | "INF" | "∞" | "infinity" => return Ok(TropScalar::Infinity),
            "" => return Err(ParseError::Scalar(s.to_string())),
            _ => {}
        }
        let bad = || ParseError::Scalar(s.to_string());
        let value = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(TropScalar::Finite(value))
    }
}

impl Serialize for TropScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TropScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_is_neutral_for_min() {
        let x = TropScalar::from_ratio(3, 4);
        assert_eq!(&x + &TropScalar::Infinity, TropScalar::Infinity);
        assert_eq!(x.oplus(&TropScalar::Infinity), x);
        assert_eq!(TropScalar::Infinity.oplus(&x), x);
        assert!(x < TropScalar::Infinity);
    }

    #[test]
    fn parse_and_display() {
        for s in ["0", "-7", "3/2", "inf"] {
            let v: TropScalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("6/4".parse::<TropScalar>().unwrap().to_string(), "3/2");
        assert!("1/0".parse::<TropScalar>().is_err());
        assert!("abc".parse::<TropScalar>().is_err());
    }

    #[test]
    fn serde_uses_text_form() {
        let v = TropScalar::from_ratio(-1, 3);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"-1/3\"");
        let back: TropScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
