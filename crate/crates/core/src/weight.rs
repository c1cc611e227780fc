//! Exact nonnegative edge weights.
//!
//! Weights are arbitrary-precision rationals so that minimum-spanning-tree
//! ties and cost comparisons are decided exactly. Decimal literals such as
//! `2`, `0.5` or `1.125` are parsed without any rounding.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("empty weight literal")]
    Empty,
    #[error("weight `{0}` is negative")]
    Negative(String),
    #[error("weight `{0}` is not a plain decimal number")]
    Malformed(String),
}

/// An exact rational weight. Constructors guarantee the value is nonnegative
/// when parsed; arithmetic differences may go negative and are used only for
/// bookkeeping.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(BigRational);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn from_integer(value: i64) -> Self {
        Weight(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Weight(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Parses a plain decimal literal (`digits[.digits]`). Signs, exponents
    /// and anything else are rejected.
    pub fn parse_decimal(text: &str) -> Result<Self, WeightError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(WeightError::Empty);
        }
        if text.starts_with('-') {
            return Err(WeightError::Negative(text.to_string()));
        }
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty())
            || !digits_ok(int_part)
            || !digits_ok(frac_part)
            || (text.contains('.') && frac_part.is_empty())
        {
            return Err(WeightError::Malformed(text.to_string()));
        }
        let mut digits = String::with_capacity(int_part.len() + frac_part.len());
        digits.push_str(int_part);
        digits.push_str(frac_part);
        let numer: BigInt = digits.parse().map_err(|_| WeightError::Malformed(text.to_string()))?;
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Weight(BigRational::new(numer, denom)))
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::zero()
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Weight::parse_decimal(s)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Weight> for Weight {
    type Output = Weight;
    fn add(self, rhs: &'a Weight) -> Weight {
        Weight(self.0 + &rhs.0)
    }
}

impl<'a> AddAssign<&'a Weight> for Weight {
    fn add_assign(&mut self, rhs: &'a Weight) {
        self.0 += &rhs.0;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &'a Weight) -> Weight {
        Weight(&self.0 - &rhs.0)
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| acc + w)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| acc + w)
    }
}

/// Integers print bare, terminating fractions print as decimals, anything
/// else prints as `p/q`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            return write!(f, "{}", self.0.numer());
        }
        let negative = self.0.is_negative();
        let abs = self.0.abs();
        let mut denom = abs.denom().clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let (mut twos, mut fives) = (0usize, 0usize);
        while (&denom % &two).is_zero() {
            denom /= &two;
            twos += 1;
        }
        while (&denom % &five).is_zero() {
            denom /= &five;
            fives += 1;
        }
        if !denom.is_one() {
            return write!(f, "{}", self.0);
        }
        let places = twos.max(fives);
        let scaled = abs * BigRational::from_integer(num_traits::pow(BigInt::from(10), places));
        let digits = scaled.to_integer().to_string();
        let digits = format!("{:0>width$}", digits, width = places + 1);
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        if negative {
            write!(f, "-")?;
        }
        write!(f, "{int_part}.{frac_part}")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}
