//! Tagged scalar: exact rational or `f64`.
//!
//! Arithmetic operators panic when the two operands are in different modes.
//! Every public entry point that accepts user scalars validates their mode
//! against the active [`QParams`](crate::QParams) first, so a panic here means
//! an internal bug. Use the `checked_*` methods to get a [`QError`] instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(QError::Parse(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero(mode: Mode) -> Self {
        Self::from_int(0, mode)
    }

    pub fn one(mode: Mode) -> Self {
        Self::from_int(1, mode)
    }

    pub fn from_int(n: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(n))),
            Mode::Float => Scalar::Float(n as f64),
        }
    }

    pub fn from_ratio(n: i64, d: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(ratio(n, d)),
            Mode::Float => Scalar::Float(n as f64 / d as f64),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(x) => *x == 1.0,
        }
    }

    /// Zero test used by polynomial canonicalization. Exact values are
    /// compared exactly; floats below `tol * scale` count as zero.
    pub fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => x.abs() <= tol * scale.max(f64::MIN_POSITIVE),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(x) => *x < 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Float(x) => *x > 0.0,
        }
    }

    /// Same value, converted to float mode.
    pub fn to_float(&self) -> Self {
        Scalar::Float(self.to_f64())
    }

    /// Integer power; negative exponents invert (panics on 0^-n in exact mode).
    pub fn powi(&self, n: i64) -> Self {
        match self {
            Scalar::Exact(r) => {
                let e = i32::try_from(n).expect("exponent out of range");
                Scalar::Exact(num_traits::pow::Pow::pow(r, e))
            }
            Scalar::Float(x) => Scalar::Float(x.powi(n as i32)),
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.recip()),
            Scalar::Float(x) => Scalar::Float(x.recip()),
        }
    }

    /// Square root when it is representable in the scalar's own mode.
    pub fn sqrt_exact(&self) -> Option<Self> {
        match self {
            Scalar::Exact(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = exact_root(r.numer(), 2)?;
                let d = exact_root(r.denom(), 2)?;
                Some(Scalar::Exact(BigRational::new(n, d)))
            }
            Scalar::Float(x) if *x >= 0.0 => Some(Scalar::Float(x.sqrt())),
            Scalar::Float(_) => None,
        }
    }

    /// Total order: exact values by value, floats by `total_cmp`, exact before float.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => a.total_cmp(b),
            (Scalar::Exact(_), Scalar::Float(_)) => Ordering::Less,
            (Scalar::Float(_), Scalar::Exact(_)) => Ordering::Greater,
        }
    }

    pub fn check_mode(&self, mode: Mode) -> Result<()> {
        if self.mode() == mode {
            Ok(())
        } else {
            Err(QError::ModeMismatch {
                expected: mode,
                found: self.mode(),
            })
        }
    }

    fn same_mode(&self, other: &Self) -> Result<()> {
        other.check_mode(self.mode())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_mode(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_mode(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_mode(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_mode(other)?;
        if other.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(self / other)
    }

    /// Parses `"p/q"`, `"n"`, or (float mode only) a decimal literal.
    pub fn parse(s: &str, mode: Mode) -> Result<Self> {
        let s = s.trim();
        match mode {
            Mode::Exact => parse_rational(s).map(Scalar::Exact),
            Mode::Float => {
                if let Ok(r) = parse_rational(s) {
                    return Ok(Scalar::Float(r.to_f64().unwrap_or(f64::NAN)));
                }
                s.parse::<f64>()
                    .map(Scalar::Float)
                    .map_err(|_| QError::Parse(format!("not a number: '{s}'")))
            }
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || QError::Parse(format!("not a rational literal: '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(QError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Exact k-th root of a non-negative integer, if it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow::Pow::pow(&r, k) == *n {
        Some(r)
    } else {
        None
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    (a, b) => panic!(
                        "scalar mode mismatch: {} {} {}",
                        a.mode(),
                        stringify!($op),
                        b.mode()
                    ),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -self.clone()
    }
}
