//! Exact rationals, the greedy denominator `G`, and half-open intervals.
//!
//! [`Rational`] is a thin newtype over [`num_rational::BigRational`] that keeps
//! the value in lowest terms with a positive denominator, parses and prints the
//! strict `p/q` text form, and exposes the handful of integer helpers the rest
//! of the crate needs (floor, ceiling, reciprocals of integers).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number in canonical lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `1/x`. Panics if `x` is zero; every caller passes a denominator >= 2.
    pub fn recip_of(x: &BigInt) -> Self {
        assert!(!x.is_zero(), "reciprocal of zero");
        Rational(BigRational::new(BigInt::one(), x.clone()))
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.numer()).div_floor(self.denom()))
    }

    /// True iff `0 < self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        self.is_positive() && self <= &Rational::one()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

/// Builds `num/den` in lowest terms.
pub fn make_rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(num, den)
}

/// Sum of `1/x` over the given denominators.
pub fn reciprocal_sum<'a, I>(terms: I) -> Rational
where
    I: IntoIterator<Item = &'a BigInt>,
{
    let mut acc = BigRational::zero();
    for x in terms {
        acc += BigRational::new(BigInt::one(), x.clone());
    }
    Rational(acc)
}

/// `G(theta)`: the unique `a >= 2` with `1/a < theta <= 1/(a-1)`.
pub fn greedy_denominator(theta: &Rational) -> Result<BigInt> {
    if !theta.in_unit_interval() {
        return Err(Error::ThetaOutOfRange(theta.clone()));
    }
    Ok(greedy_denominator_unchecked(theta))
}

/// `floor(q/p) + 1` for a positive `p/q`; no range check.
pub(crate) fn greedy_denominator_unchecked(theta: &Rational) -> BigInt {
    debug_assert!(theta.is_positive());
    theta.denom().div_floor(theta.numer()) + 1u32
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
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
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
        write!(f, "{self}")
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with decimal digits, an optional leading `-` on
    /// the numerator, and nothing else (no whitespace, no `+`, no decimals).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        match s.split_once('/') {
            None => parse_int(s).map(Rational::from_integer).ok_or_else(bad),
            Some((p, q)) => {
                let num = parse_int(p).ok_or_else(bad)?;
                if q.starts_with('-') {
                    return Err(bad());
                }
                let den = parse_int(q).ok_or_else(bad)?;
                Rational::new(num, den)
            }
        }
    }
}

/// The half-open interval `(lo, hi]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HalfOpenInterval {
    lo: Rational,
    hi: Rational,
}

impl HalfOpenInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval {
                lo: Box::new(lo),
                hi: Box::new(hi),
            });
        }
        Ok(HalfOpenInterval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, theta: &Rational) -> bool {
        &self.lo < theta && theta <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Whether two intervals share any point.
    pub fn overlaps(&self, other: &HalfOpenInterval) -> bool {
        self.lo.cmp(&other.hi) == Ordering::Less && other.lo.cmp(&self.hi) == Ordering::Less
    }

    /// Whether `other` lies inside `self`.
    pub fn encloses(&self, other: &HalfOpenInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for HalfOpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

pub fn interval_contains(iv: &HalfOpenInterval, theta: &Rational) -> bool {
    iv.contains(theta)
}
