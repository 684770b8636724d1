//! Exact dyadic rationals `numerator / 2^exponent`.
//!
//! Centers and bounds in the recognizer are always of this form, so equality
//! tests (which decide the fixed-center sets) are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A dyadic rational in canonical form: the numerator is odd, or the
/// exponent is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseDyadicError {
    #[error("empty number")]
    Empty,
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("denominator `{0}` is not a positive power of two")]
    NotDyadic(String),
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator: numerator.into(),
            exponent,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            numerator: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic {
            numerator: BigInt::from(n),
            exponent: 0,
        }
    }

    /// `1 / 2^k`.
    pub fn half_pow(k: u32) -> Self {
        Dyadic {
            numerator: BigInt::one(),
            exponent: k,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            numerator: self.numerator.abs(),
            exponent: self.exponent,
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_i64(&self) -> Option<i64> {
        if self.exponent == 0 {
            self.numerator.to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let num = self.numerator.to_f64().unwrap_or(f64::NAN);
        num / 2f64.powi(self.exponent as i32)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.exponent == 0 {
            return self.numerator.clone();
        }
        // arithmetic shift rounds toward negative infinity
        &self.numerator >> self.exponent
    }

    /// `self · 2^k`.
    pub fn mul_pow2(&self, k: u32) -> Dyadic {
        Dyadic::new(&self.numerator << k, self.exponent)
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && self.numerator.is_even() {
            self.numerator >>= 1u32;
            self.exponent -= 1;
        }
    }

    /// Numerators of `self` and `other` over the common denominator.
    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        match self.exponent.cmp(&other.exponent) {
            Ordering::Equal => (self.numerator.clone(), other.numerator.clone(), self.exponent),
            Ordering::Less => (
                &self.numerator << (other.exponent - self.exponent),
                other.numerator.clone(),
                other.exponent,
            ),
            Ordering::Greater => (
                self.numerator.clone(),
                &other.numerator << (self.exponent - other.exponent),
                self.exponent,
            ),
        }
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl From<i32> for Dyadic {
    fn from(n: i32) -> Self {
        Dyadic::from_int(n as i64)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.exponent == other.exponent {
            return self.numerator.cmp(&other.numerator);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Add<i64> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: i64) -> Dyadic {
        // Adding an integer never changes the parity of an odd numerator.
        if self.exponent == 0 {
            return Dyadic {
                numerator: &self.numerator + rhs,
                exponent: 0,
            };
        }
        Dyadic {
            numerator: &self.numerator + (BigInt::from(rhs) << self.exponent),
            exponent: self.exponent,
        }
    }
}

impl Sub<i64> for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: i64) -> Dyadic {
        self + (-rhs)
    }
}

impl Add<i64> for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: i64) -> Dyadic {
        &self + rhs
    }
}

impl Sub<i64> for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: i64) -> Dyadic {
        &self - rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Dyadic> for Dyadic {
    fn sub_assign(&mut self, rhs: &Dyadic) {
        *self = &*self - rhs;
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -self.clone()
    }
}

/// Formats as `p` for integers and `p/q` otherwise.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigInt::one() << self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseDyadicError::Empty);
        }
        // Accept the typographic minus sign as well.
        let owned;
        let s = if s.contains('\u{2212}') {
            owned = s.replace('\u{2212}', "-");
            owned.as_str()
        } else {
            s
        };
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ParseDyadicError::InvalidInteger(t.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Dyadic::new(parse_int(s)?, 0)),
            Some((num, den)) => {
                let numerator = parse_int(num)?;
                let denominator = parse_int(den)?;
                if !denominator.is_positive() {
                    return Err(ParseDyadicError::NotDyadic(den.to_string()));
                }
                let exponent = denominator.trailing_zeros().unwrap_or(0);
                if (BigInt::one() << exponent) != denominator {
                    return Err(ParseDyadicError::NotDyadic(den.to_string()));
                }
                let exponent =
                    u32::try_from(exponent).map_err(|_| ParseDyadicError::NotDyadic(den.to_string()))?;
                Ok(Dyadic::new(numerator, exponent))
            }
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = Dyadic::new(6, 2);
        assert_eq!(x.numerator(), &BigInt::from(3));
        assert_eq!(x.exponent(), 1);
        assert_eq!(Dyadic::new(0, 7).exponent(), 0);
        assert_eq!(Dyadic::new(8, 3), Dyadic::from_int(1));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(d("-3/4").to_string(), "-3/4");
        assert_eq!(d("\u{2212}3/4"), d("-3/4"));
        assert_eq!(d("4/2").to_string(), "2");
        assert_eq!(d("7"), Dyadic::from_int(7));
        assert!(matches!("1/3".parse::<Dyadic>(), Err(ParseDyadicError::NotDyadic(_))));
        assert!(matches!("1/0".parse::<Dyadic>(), Err(ParseDyadicError::NotDyadic(_))));
        assert!(matches!("a/2".parse::<Dyadic>(), Err(ParseDyadicError::InvalidInteger(_))));
        assert!("".parse::<Dyadic>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&d("1/2") + &d("1/4"), d("3/4"));
        assert_eq!(&d("1/2") - &d("1/2"), Dyadic::zero());
        assert_eq!(&d("-3/8") + 1, d("5/8"));
        assert_eq!(d("1/2") + d("1/2"), Dyadic::from_int(1));
        assert!(d("1/1024") > Dyadic::zero());
        assert!(d("-1/2") < d("-1/4"));
        assert_eq!(Dyadic::half_pow(3), d("1/8"));
        assert_eq!(d("-3/4").floor(), BigInt::from(-1));
        assert_eq!(d("7/4").floor(), BigInt::from(1));
        assert_eq!(d("-2").floor(), BigInt::from(-2));
        assert_eq!(d("3/8").mul_pow2(3), Dyadic::from_int(3));
    }

    #[test]
    fn large_exponents_stay_exact() {
        let tiny = Dyadic::half_pow(200);
        let x = &Dyadic::from_int(5) + &tiny;
        assert!(x > Dyadic::from_int(5));
        assert_eq!(&x - &tiny, Dyadic::from_int(5));
    }

    proptest! {
        #[test]
        fn add_matches_rational_arithmetic(a in -1000i64..1000, ea in 0u32..12, b in -1000i64..1000, eb in 0u32..12) {
            let x = Dyadic::new(a, ea);
            let y = Dyadic::new(b, eb);
            let sum = &x + &y;
            // a/2^ea + b/2^eb over denominator 2^(ea+eb)
            let lhs = BigInt::from(a) * (BigInt::one() << eb) + BigInt::from(b) * (BigInt::one() << ea);
            let expected = Dyadic::new(lhs, ea + eb);
            prop_assert_eq!(&sum, &expected);
            prop_assert_eq!(&(&sum - &y), &x);
            prop_assert_eq!(x.cmp(&y), (x.to_f64()).partial_cmp(&y.to_f64()).unwrap());
        }

        #[test]
        fn display_parse_roundtrip(a in any::<i64>(), e in 0u32..70) {
            let x = Dyadic::new(a, e);
            prop_assert_eq!(x.to_string().parse::<Dyadic>().unwrap(), x);
        }
    }
}
