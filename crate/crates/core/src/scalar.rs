//! Scalar backends: exact rationals and tolerance-tagged floats.
//!
//! Every comparison goes through [`Scalar::compare`], which is allowed to
//! refuse an answer. The exact backend never refuses; the approximate backend
//! refuses whenever the two values are within its tolerance of each other.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Default tolerance band of the approximate backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// A comparison fell inside the tolerance band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("comparison falls inside the tolerance band")]
pub struct Indeterminate;

/// Field operations plus checked comparisons.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for backends whose comparisons are always decided.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// `n / d`; `d` must be nonzero.
    fn from_ratio(n: i64, d: i64) -> Self;

    fn compare(&self, other: &Self) -> Result<Ordering, Indeterminate>;

    fn abs_value(&self) -> Self;

    /// Greatest integer not above the value, if it fits in an `i64`.
    fn floor_int(&self) -> Option<i64>;

    /// Square root when it lies in the backend (perfect squares for rationals).
    fn exact_sqrt(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Converts an exact rational into this backend.
    fn from_rational(r: &Rational) -> Self;

    /// The exact value of the stored number; `None` for non-finite floats.
    fn to_rational(&self) -> Option<Rational>;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn sign(&self) -> Result<Ordering, Indeterminate> {
        self.compare(&Self::zero())
    }

    fn is_zero_checked(&self) -> Result<bool, Indeterminate> {
        Ok(self.sign()? == Ordering::Equal)
    }

    fn equals(&self, other: &Self) -> Result<bool, Indeterminate> {
        Ok(self.compare(other)? == Ordering::Equal)
    }

    fn less(&self, other: &Self) -> Result<bool, Indeterminate> {
        Ok(self.compare(other)? == Ordering::Less)
    }

    fn less_eq(&self, other: &Self) -> Result<bool, Indeterminate> {
        Ok(self.compare(other)? != Ordering::Greater)
    }

    fn greater(&self, other: &Self) -> Result<bool, Indeterminate> {
        Ok(self.compare(other)? == Ordering::Greater)
    }

    fn greater_eq(&self, other: &Self) -> Result<bool, Indeterminate> {
        Ok(self.compare(other)? != Ordering::Less)
    }

    /// Equal, or too close to tell apart. Used when re-checking evidence.
    fn close(&self, other: &Self) -> bool {
        !matches!(self.compare(other), Ok(Ordering::Less | Ordering::Greater))
    }

    /// `self > other` beyond any error band.
    fn clearly_greater(&self, other: &Self) -> bool {
        matches!(self.compare(other), Ok(Ordering::Greater))
    }

    /// Nearest integer, halves rounded away from zero.
    fn round_int(&self) -> Option<i64> {
        let half = Self::from_ratio(1, 2);
        match self.sign().ok()? {
            Ordering::Less => (self.clone() - half).abs_value().floor_int().map(|n| -n),
            _ => (self.clone() + half).floor_int(),
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn compare(&self, other: &Self) -> Result<Ordering, Indeterminate> {
        Ok(self.cmp(other))
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn floor_int(&self) -> Option<i64> {
        self.floor().to_integer().to_i64()
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// A float carrying the width of the band inside which comparisons are refused.
///
/// Constants have a zero band; arithmetic keeps the widest band of its operands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub tol: f64,
}

impl Approx {
    pub fn new(value: f64, tol: f64) -> Self {
        Approx { value, tol: tol.abs() }
    }

    fn lift(&self, value: f64, other: &Approx) -> Approx {
        Approx { value, tol: self.tol.max(other.tol) }
    }
}

impl Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.value, f)
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, rhs: Approx) -> Approx {
        self.lift(self.value + rhs.value, &rhs)
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, rhs: Approx) -> Approx {
        self.lift(self.value - rhs.value, &rhs)
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, rhs: Approx) -> Approx {
        self.lift(self.value * rhs.value, &rhs)
    }
}

impl Div for Approx {
    type Output = Approx;
    fn div(self, rhs: Approx) -> Approx {
        self.lift(self.value / rhs.value, &rhs)
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx { value: -self.value, tol: self.tol }
    }
}

impl Scalar for Approx {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Approx::new(n as f64, 0.0)
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Approx::new(n as f64 / d as f64, 0.0)
    }

    fn compare(&self, other: &Self) -> Result<Ordering, Indeterminate> {
        let band = self.tol.max(other.tol);
        let diff = self.value - other.value;
        if !diff.is_finite() && !(self.value.is_infinite() || other.value.is_infinite()) {
            return Err(Indeterminate);
        }
        if band > 0.0 && diff.abs() <= band {
            return Err(Indeterminate);
        }
        self.value.partial_cmp(&other.value).ok_or(Indeterminate)
    }

    fn abs_value(&self) -> Self {
        Approx { value: self.value.abs(), tol: self.tol }
    }

    fn floor_int(&self) -> Option<i64> {
        let f = self.value.floor();
        if f.is_finite() && f.abs() < 9.0e18 {
            Some(f as i64)
        } else {
            None
        }
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.value < 0.0 {
            None
        } else {
            Some(Approx { value: self.value.sqrt(), tol: self.tol })
        }
    }

    fn to_f64(&self) -> f64 {
        self.value
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(self.value)
    }

    fn from_rational(r: &Rational) -> Self {
        Approx::new(Scalar::to_f64(r), 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, integers and finite decimals (with optional exponent) exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ParseScalarError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n.trim()).ok_or_else(|| ParseScalarError::Malformed(s.into()))?;
        let d = parse_decimal(d.trim()).ok_or_else(|| ParseScalarError::Malformed(s.into()))?;
        if d.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(s.into()));
        }
        return Ok(n / d);
    }
    parse_decimal(s).ok_or_else(|| ParseScalarError::Malformed(s.into()))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    if exponent.unsigned_abs() > 4096 {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Euclidean remainder of `value` modulo a positive `modulus`.
pub fn rem_euclid(value: &Rational, modulus: &Rational) -> Rational {
    let q = (value / modulus).floor();
    value - q * modulus
}
