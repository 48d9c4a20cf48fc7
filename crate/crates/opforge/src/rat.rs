//! Exact rational scalars.
//!
//! Every computation in this crate happens over the rationals, with no
//! floating point anywhere. `Rat` wraps `num::BigRational`, which keeps
//! values in lowest terms with a positive denominator.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// An exact rational number, always in lowest terms, denominator > 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    pub fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }

    /// Parse "p/q" or "p".
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|e| e.to_string())?;
            let q = BigInt::from_str(q.trim()).map_err(|e| e.to_string())?;
            if q.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rat(BigRational::new(p, q)))
        } else {
            let p = BigInt::from_str(s).map_err(|e| e.to_string())?;
            Ok(Rat(BigRational::from_integer(p)))
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
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

impl std::ops::Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl std::ops::Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl std::ops::Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        Rat(self.0 / rhs.0)
    }
}

impl std::ops::Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl<'a> std::ops::Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl<'a> std::ops::Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl<'a> std::ops::Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl std::ops::AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        Rat::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Sign of a Koszul transposition, as a scalar.
pub fn sign_rat(sign: i64) -> Rat {
    match sign {
        1 => Rat::one(),
        -1 => Rat::from_int(-1),
        s => Rat::from_int(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = Rat::from_frac(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3/2", "-7", "0", "22/7"] {
            assert_eq!(Rat::parse(s).unwrap().to_string(), s);
        }
        assert!(Rat::parse("1/0").is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Rat::from_frac(1, 2);
        let b = Rat::from_frac(1, 3);
        assert_eq!((a.clone() + b.clone()).to_string(), "5/6");
        assert_eq!((a.clone() * b).to_string(), "1/6");
        assert_eq!((a.clone() / a).to_string(), "1");
    }
}
