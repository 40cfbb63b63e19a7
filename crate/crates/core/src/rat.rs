//! Exact rational scalars.
//!
//! [`Rat`] wraps an arbitrary-precision rational that is always kept in
//! lowest terms with a positive denominator. On the wire it is the string
//! `"p/q"`; integer shorthand (`"3"`) is accepted on input only.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Rat {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn int(value: i64) -> Rat {
        Rat(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// `2^-n`
    pub fn dyadic(n: u32) -> Rat {
        Rat(BigRational::new(BigInt::one(), BigInt::one() << n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    /// Scales by `2^k`.
    pub fn shl(&self, k: u32) -> Rat {
        Rat(BigRational::new(self.0.numer() << k, self.0.denom().clone()))
    }

    /// Scales by `2^-k`.
    pub fn shr(&self, k: u32) -> Rat {
        Rat(BigRational::new(self.0.numer().clone(), self.0.denom() << k))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Nearest `f64`. Only used for display.
    pub fn to_f64(&self) -> f64 {
        match self.0.to_f64() {
            Some(v) => v,
            None => {
                // numerator or denominator beyond f64 range; scale both down
                let shift = self.0.numer().bits().max(self.0.denom().bits()).saturating_sub(1000);
                let n = (self.0.numer() >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (self.0.denom() >> shift).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    /// Canonical wire form `p/q`, also for integers.
    pub fn to_canonical(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    pub fn min(self, other: Rat) -> Rat {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Rat) -> Rat {
        std::cmp::max(self, other)
    }
}

/// Short form: integers print without a denominator.
impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat, Error> {
        let bad = || Error::ParseRat(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_canonical())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::int(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rat::new(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(r.to_canonical(), "-3/4");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/4".parse::<Rat>().unwrap(), Rat::new(3, 4));
        assert_eq!("-1/2".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert_eq!("1".parse::<Rat>().unwrap(), Rat::one());
        assert_eq!("4/8".parse::<Rat>().unwrap().to_canonical(), "1/2");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn canonical_output_always_has_denominator() {
        assert_eq!(Rat::one().to_canonical(), "1/1");
        assert_eq!(Rat::zero().to_canonical(), "0/1");
        assert_eq!(Rat::zero().to_string(), "0");
    }

    #[test]
    fn serde_round_trip() {
        let r = Rat::new(-5, 12);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"-5/12\"");
        let back: Rat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let int: Rat = serde_json::from_str("\"2\"").unwrap();
        assert_eq!(int, Rat::int(2));
    }

    #[test]
    fn dyadic_shifts() {
        assert_eq!(Rat::dyadic(3), Rat::new(1, 8));
        assert_eq!(Rat::new(3, 4).shl(2), Rat::int(3));
        assert_eq!(Rat::new(3, 4).shr(1), Rat::new(3, 8));
    }

    #[test]
    fn huge_to_f64() {
        let big = Rat::from_big((BigInt::one() << 1500u32) + 1, (BigInt::one() << 1500u32) * 3);
        assert!((big.to_f64() - 1.0 / 3.0).abs() < 1e-15);
    }
}
