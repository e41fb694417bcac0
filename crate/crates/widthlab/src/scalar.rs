//! Exact rational scalars, signs, and signed infinities.
//!
//! Every coordinate, threshold, and width magnitude in this crate is a
//! [`Scalar`]: an arbitrary-precision rational kept in reduced form with a
//! positive denominator. Values serialize as `"p/q"` strings so that files
//! and reports are bit-exact; parsing also accepts plain integers and
//! terminating decimals (`"2.4"` means 12/5).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Sign of a step function value: -1 or +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Minus),
            1 => Some(Sign::Plus),
            _ => None,
        }
    }

    /// `v` negated when the sign is minus.
    pub fn apply(self, v: Scalar) -> Scalar {
        match self {
            Sign::Minus => -v,
            Sign::Plus => v,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_int(v).ok_or_else(|| serde::de::Error::custom("sign must be 1 or -1"))
    }
}

/// Exact rational number in canonical reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// num/den with den != 0.
    pub fn new(num: i64, den: i64) -> Result<Scalar, Error> {
        Scalar::from_big(BigInt::from(num), BigInt::from(den))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Scalar, Error> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn half(&self) -> Scalar {
        Scalar(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn midpoint(a: &Scalar, b: &Scalar) -> Scalar {
        (a + b).half()
    }

    /// Largest integer <= self, as a big integer.
    pub fn floor_big(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Largest integer <= self as usize; `None` when negative or too large.
    pub fn floor_usize(&self) -> Option<usize> {
        self.floor_big().to_usize()
    }

    /// Closest double; the only lossy conversion in the crate, used by the
    /// floating-point estimate and report columns that are documented as
    /// approximate.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_decimal(s: &str) -> Result<Scalar, Error> {
    let err = || Error::Parse(format!("cannot parse {s:?} as an exact rational"));
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').ok_or_else(err)?;
    if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    if !(int_part.is_empty() || int_part.bytes().all(|b| b.is_ascii_digit())) {
        return Err(err());
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let num = BigInt::from_str(&digits).map_err(|_| err())?;
    let den = BigInt::from(10u8).pow(frac_part.len() as u32);
    Scalar::from_big(num * BigInt::from(sign), den)
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar, Error> {
        let t = s.trim();
        let err = || Error::Parse(format!("cannot parse {s:?} as an exact rational"));
        if t.is_empty() {
            return Err(err());
        }
        if let Some((n, d)) = t.split_once('/') {
            let num = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let den = BigInt::from_str(d.trim()).map_err(|_| err())?;
            return Scalar::from_big(num, den);
        }
        if t.contains('.') {
            return parse_decimal(t);
        }
        let num = BigInt::from_str(t).map_err(|_| err())?;
        Ok(Scalar(BigRational::from_integer(num)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse()
            .map_err(|e: Error| serde::de::Error::custom(e.to_string()))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// A scalar extended with the two infinities. `NegInfinity < finite < PosInfinity`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedScalar {
    NegInfinity,
    Finite(Scalar),
    PosInfinity,
}

impl ExtendedScalar {
    pub fn finite(v: Scalar) -> ExtendedScalar {
        ExtendedScalar::Finite(v)
    }

    pub fn infinity(sign: Sign) -> ExtendedScalar {
        match sign {
            Sign::Plus => ExtendedScalar::PosInfinity,
            Sign::Minus => ExtendedScalar::NegInfinity,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedScalar::Finite(_))
    }

    pub fn abs(&self) -> ExtendedScalar {
        match self {
            ExtendedScalar::Finite(v) => ExtendedScalar::Finite(v.abs()),
            _ => ExtendedScalar::PosInfinity,
        }
    }

    pub fn gt(&self, threshold: &Scalar) -> bool {
        match self {
            ExtendedScalar::PosInfinity => true,
            ExtendedScalar::NegInfinity => false,
            ExtendedScalar::Finite(v) => v > threshold,
        }
    }

    pub fn ge(&self, threshold: &Scalar) -> bool {
        match self {
            ExtendedScalar::PosInfinity => true,
            ExtendedScalar::NegInfinity => false,
            ExtendedScalar::Finite(v) => v >= threshold,
        }
    }

    pub fn as_finite(&self) -> Option<&Scalar> {
        match self {
            ExtendedScalar::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedScalar::NegInfinity => write!(f, "-inf"),
            ExtendedScalar::PosInfinity => write!(f, "inf"),
            ExtendedScalar::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ExtendedScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        match raw.as_str() {
            "inf" => Ok(ExtendedScalar::PosInfinity),
            "-inf" => Ok(ExtendedScalar::NegInfinity),
            other => other
                .parse()
                .map(ExtendedScalar::Finite)
                .map_err(|e: Error| serde::de::Error::custom(e.to_string())),
        }
    }
}
