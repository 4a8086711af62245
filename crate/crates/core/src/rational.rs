//! Exact rational numbers.
//!
//! [`Rational`] is always stored in canonical reduced form with a positive
//! denominator, so structural equality is numeric equality. The text form is
//! `"num/den"` (e.g. `"16/17"`, `"1/1"`); parsing also accepts bare integers.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Default number of significant digits used by [`Rational::to_decimal`].
pub const DEFAULT_SIGNIFICANT_DIGITS: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` and reduces it. Fails on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// `num/den` for small literals. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("zero denominator")
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Lossy conversion for presentation and statistics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// Decimal rendering with `digits` significant digits, rounding half to
    /// even. Trailing zeros are kept, so `1/2` renders as `0.500000`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("{:.*}", digits - 1, 0.0);
        }
        let negative = self.is_negative();
        let abs = self.0.abs();
        let ten = BigRational::from_integer(BigInt::from(10u32));

        // exponent e with 10^e <= abs < 10^(e+1)
        let mut exp: i64 = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
        while abs < pow10(&ten, exp) {
            exp -= 1;
        }
        while abs >= pow10(&ten, exp + 1) {
            exp += 1;
        }

        let shift = digits as i64 - 1 - exp;
        let scaled = &abs * pow10(&ten, shift);
        let mut mantissa = round_half_even(&scaled);
        let limit = num_traits::pow(BigInt::from(10u32), digits);
        if mantissa >= limit {
            mantissa /= BigInt::from(10u32);
            exp += 1;
        }
        let shift = digits as i64 - 1 - exp;

        let mut text = mantissa.to_string();
        let body = if shift <= 0 {
            text.extend(std::iter::repeat_n('0', (-shift) as usize));
            text
        } else {
            let shift = shift as usize;
            if text.len() <= shift {
                let pad = shift - text.len();
                format!("0.{}{}", "0".repeat(pad), text)
            } else {
                let split = text.len() - shift;
                format!("{}.{}", &text[..split], &text[split..])
            }
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn pow10(ten: &BigRational, exp: i64) -> BigRational {
    let p = num_traits::pow(ten.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

fn round_half_even(x: &BigRational) -> BigInt {
    let floor = x.floor().to_integer();
    let frac = x - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2u32));
    match frac.cmp(&half) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::integer(value)
    }
}

impl From<BigUint> for Rational {
    fn from(value: BigUint) -> Self {
        Rational::integer(BigInt::from_biguint(Sign::Plus, value))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => s.parse::<BigInt>().map(Rational::integer).map_err(|_| bad()),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the underlying type; use `recip` to check.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::frac(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::frac(2, 4), Rational::frac(1, 2));
        assert_eq!(Rational::integer(5).to_string(), "5/1");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(Rational::new(1, 0), Err(Error::ZeroDenominator)));
        assert!("3/0".parse::<Rational>().is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("16/17".parse::<Rational>().unwrap(), Rational::frac(16, 17));
        assert_eq!(" 4 / 8 ".parse::<Rational>().unwrap(), Rational::frac(1, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::integer(7));
        assert!("0.5".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::frac(2049, 3075).to_decimal(6), "0.666341");
        assert_eq!(Rational::frac(2049, 3075).to_decimal(7), "0.6663415");
        assert_eq!(Rational::frac(16, 17).to_decimal(6), "0.941176");
        assert_eq!(Rational::frac(1, 2).to_decimal(6), "0.500000");
        assert_eq!(Rational::frac(1, 1025).to_decimal(6), "0.000975610");
        assert_eq!(Rational::integer(2).to_decimal(3), "2.00");
        assert_eq!(Rational::integer(1234).to_decimal(2), "1200");
        assert_eq!(Rational::zero().to_decimal(3), "0.00");
        assert_eq!(Rational::frac(-1, 3).to_decimal(2), "-0.33");
        // carry into a new digit
        assert_eq!(Rational::frac(9999, 10000).to_decimal(3), "1.00");
    }

    #[test]
    fn decimal_ties_round_to_even() {
        assert_eq!(Rational::frac(5, 2).to_decimal(1), "2");
        assert_eq!(Rational::frac(7, 2).to_decimal(1), "4");
        assert_eq!(Rational::frac(125, 1000).to_decimal(2), "0.12");
        assert_eq!(Rational::frac(135, 1000).to_decimal(2), "0.14");
    }

    #[test]
    fn serde_as_text() {
        let r = Rational::frac(2, 6);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"1/3\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
