//! Canonical arbitrary-precision rationals.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// An exact rational number, always stored in lowest terms with a positive
/// denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    InvalidInteger(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// Builds `numer/denom` in canonical form. Returns `None` for a zero
    /// denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(Rat(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match self.numer().sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        self.numer().div_ceil(self.denom())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rat(num_traits::Pow::pow(&self.0, exp))
    }

    /// `(a + c) / (b + d)` for `self = a/b`, `other = c/d`; lies strictly
    /// between the two when they differ.
    pub fn mediant(&self, other: &Rat) -> Rat {
        Rat(BigRational::new(
            self.numer() + other.numer(),
            self.denom() + other.denom(),
        ))
    }

    pub fn midpoint(&self, other: &Rat) -> Rat {
        (self + other) * Rat::new(1, 2).expect("nonzero")
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_integer(n)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_integer(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::from_integer(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p` or `p/q` with optional sign on either part, surrounding
/// whitespace ignored. The result is reduced.
impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRatError::Empty);
        }
        let parse_int = |t: &str| {
            let t = t.trim();
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRatError::InvalidInteger(t.to_string()));
            }
            BigInt::from_str(t.strip_prefix('+').unwrap_or(t))
                .map_err(|_| ParseRatError::InvalidInteger(t.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Rat::from_integer(parse_int(s)?)),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                Rat::new(n, d).ok_or(ParseRatError::ZeroDenominator)
            }
        }
    }
}

impl PartialEq<i64> for Rat {
    fn eq(&self, other: &i64) -> bool {
        self.denom().is_one() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rat {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rat::from(*other)))
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident, $assign_imp:ident, $assign_method:ident) => {
        impl<'a> $imp<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat($imp::$method(&self.0, &rhs.0))
            }
        }
        impl $imp<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($imp::$method(self.0, rhs.0))
            }
        }
        impl<'a> $imp<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat($imp::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $imp<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($imp::$method(&self.0, rhs.0))
            }
        }
        impl $assign_imp<Rat> for Rat {
            fn $assign_method(&mut self, rhs: Rat) {
                $assign_imp::$assign_method(&mut self.0, rhs.0);
            }
        }
        impl<'a> $assign_imp<&'a Rat> for Rat {
            fn $assign_method(&mut self, rhs: &'a Rat) {
                $assign_imp::$assign_method(&mut self.0, &rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

// Division by zero panics, matching the integer types.
impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}

impl<'a> Div<&'a Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        &self / rhs
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

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

/// Shorthand used throughout the tests: `rat(3, 4)` is 3/4.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(numer, denom).expect("nonzero denominator")
}
