use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArithError, Field};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Shorthand for small literals. Panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("zero denominator in literal")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// True when numerator and denominator share no factor and the
    /// denominator is positive.
    pub fn is_canonical(&self) -> bool {
        self.denom().is_positive() && self.numer().gcd(self.denom()).is_one()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, ArithError> {
        Rational::one_value().checked_div(self)
    }

    pub fn pow(&self, exp: i32) -> Result<Rational, ArithError> {
        if exp < 0 && self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    fn one_value() -> Rational {
        Rational(BigRational::one())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Decimal rendering with `places` fractional digits, ties rounded away
    /// from zero, computed exactly.
    pub fn to_decimal_string(&self, places: u32) -> String {
        let scale = BigInt::from(10u32).pow(places);
        let scaled = self.numer().abs() * &scale;
        let (q, r) = scaled.div_rem(self.denom());
        let twice = r * 2u32;
        let q = if twice >= *self.denom() { q + 1u32 } else { q };
        let negative = self.numer().is_negative() && !q.is_zero();
        format_scaled(&q, places, negative)
    }
}

pub(crate) fn format_scaled(q: &BigInt, places: u32, negative: bool) -> String {
    let digits = q.to_string();
    let places = places as usize;
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, ArithError> {
            BigInt::from_str(t.trim()).map_err(|_| ArithError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }

        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational::one_value()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.checked_div(rhs)
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn is_positive(&self) -> Option<bool> {
        Some(Rational::is_positive(self))
    }

    // Both transforms over a common denominator, normalized once.
    fn delta(&self, y: &Self, z: &Self) -> Result<Self, ArithError> {
        let (a1, b1, a2, b2, a3, b3) = (self.numer(), self.denom(), y.numer(), y.denom(), z.numer(), z.denom());
        let b12 = b1 * b2;
        let numer = a1 * a2 * b3;
        let denom = (a1 * b2 + a2 * b1) * b3 + a3 * b12;
        Rational::new(numer, denom)
    }

    fn wye(&self, y: &Self, z: &Self) -> Result<Self, ArithError> {
        let (a1, b1, a2, b2, a3, b3) = (self.numer(), self.denom(), y.numer(), y.denom(), z.numer(), z.denom());
        let a13 = a1 * a3;
        let numer = (a1 * b3 + a3 * b1) * a2 + a13 * b2;
        Rational::new(numer, a1 * b2 * b3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_arithmetic() {
        assert_eq!(Rational::frac(1, 2) + Rational::frac(1, 3), Rational::frac(5, 6));
        let r = Rational::frac(2, 3);
        assert_eq!(r.checked_div(&r).unwrap(), Rational::from(1));
        assert_eq!(Rational::frac(26, 27) * Rational::frac(27, 26), Rational::from(1));
    }

    #[test]
    fn canonical_form_on_construction() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.is_canonical());
        assert_eq!(Rational::new(0, -7).unwrap().to_string(), "0");
        assert_eq!(Rational::new(0, -7).unwrap().denom(), &BigInt::from(1));
    }

    #[test]
    fn fused_transforms_match_field_ops() {
        let vals: Vec<Rational> = [(2, 3), (13, 12), (1, 1), (7, 5), (-3, 4)]
            .iter()
            .map(|&(n, d)| Rational::frac(n, d))
            .collect();
        for x in &vals {
            for y in &vals {
                for z in &vals {
                    let sum = x + y + z.clone();
                    if !sum.is_zero() {
                        assert_eq!(Field::delta(x, y, z).unwrap(), (x * y).checked_div(&sum).unwrap());
                    }
                    let top = x * y + y * z + z * x;
                    assert_eq!(Field::wye(x, y, z).unwrap(), top.checked_div(x).unwrap());
                }
            }
        }
        assert!(Field::wye(&Rational::from(0), &Rational::from(1), &Rational::from(1)).is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Rational::frac(1, 2).checked_div(&Rational::from(0)),
            Err(ArithError::DivisionByZero)
        );
        assert!(Rational::new(1, 0).is_err());
        assert!("3/0".parse::<Rational>().is_err());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("26/27".parse::<Rational>().unwrap(), Rational::frac(26, 27));
        assert_eq!(" -4/6 ".parse::<Rational>().unwrap().to_string(), "-2/3");
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
        assert!("x/2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_rendering_rounds_ties_away_from_zero() {
        assert_eq!(Rational::frac(13, 32).to_decimal_string(4), "0.4063");
        assert_eq!(Rational::frac(2, 3).to_decimal_string(4), "0.6667");
        assert_eq!(Rational::frac(-13, 32).to_decimal_string(4), "-0.4063");
        assert_eq!(Rational::frac(1, 100000).to_decimal_string(4), "0.0000");
        assert_eq!(Rational::frac(9, 8).to_decimal_string(0), "1");
        assert_eq!(Rational::from(12).to_decimal_string(2), "12.00");
    }
}
