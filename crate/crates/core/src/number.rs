//! Scalars that are exact rationals when possible and doubles otherwise.
//!
//! Classification decisions hinge on exact zero/sign tests (the μ = ½
//! boundary, vanishing ladder coefficients), so parameters written as
//! `p/q` or integers stay in [`Number::Exact`]. Anything else falls back
//! to [`Number::Approx`], where a value within [`APPROX_ZERO`] of zero is
//! treated as zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Zero-detection threshold for floating-point mode.
pub const APPROX_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(BigRational),
    Approx(f64),
}

impl Number {
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Number::Exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn int(value: i64) -> Self {
        Number::Exact(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Number::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Number::Exact(BigRational::one())
    }

    pub fn half() -> Self {
        Number::ratio(1, 2)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Number::Exact(q) => Some(q),
            Number::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => q.to_f64().unwrap_or_else(|| {
                // numerator/denominator overflow f64 individually
                let n = q.numer().to_f64().unwrap_or(f64::NAN);
                let d = q.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }),
            Number::Approx(x) => *x,
        }
    }

    /// Sign with exact zero test for rationals and an [`APPROX_ZERO`]
    /// window for doubles.
    pub fn sign(&self) -> Ordering {
        match self {
            Number::Exact(q) => {
                if q.is_zero() {
                    Ordering::Equal
                } else if q.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            Number::Approx(x) => {
                if x.abs() <= APPROX_ZERO {
                    Ordering::Equal
                } else if *x > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    /// `self` compared with `other` through the sign of the difference.
    pub fn compare(&self, other: &Number) -> Ordering {
        (self - other).sign()
    }

    /// Square root as a double; the single place where exact values leave
    /// the rationals.
    pub fn sqrt_f64(&self) -> f64 {
        self.to_f64().sqrt()
    }

    pub fn recip(&self) -> Number {
        match self {
            Number::Exact(q) => Number::Exact(q.recip()),
            Number::Approx(x) => Number::Approx(1.0 / x),
        }
    }

    /// Rising factorial (x)_n = x(x+1)...(x+n-1), with (x)_0 = 1.
    pub fn pochhammer(&self, n: usize) -> Number {
        let mut acc = Number::one();
        let mut factor = self.clone();
        for _ in 0..n {
            acc = &acc * &factor;
            factor = &factor + &Number::one();
        }
        acc
    }
}

impl From<i64> for Number {
    fn from(v: i64) -> Self {
        Number::int(v)
    }
}

impl From<f64> for Number {
    fn from(v: f64) -> Self {
        Number::Approx(v)
    }
}

impl FromStr for Number {
    type Err = Error;

    /// `p/q` and plain integers parse exactly; decimals and exponents parse
    /// as doubles.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(Error::Parse(s.to_string()));
            }
            return Ok(Number::Exact(BigRational::new(n, d)));
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return Ok(Number::Exact(BigRational::from_integer(n)));
        }
        match t.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Number::Approx(x)),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Number::Approx(x) => {
                // keep a decimal point so the value re-parses as approximate
                if x.fract() == 0.0 && x.abs() < 1e15 {
                    write!(f, "{x:.1}")
                } else {
                    write!(f, "{x}")
                }
            }
        }
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn lift(
    a: &Number,
    b: &Number,
    exact: impl Fn(&BigRational, &BigRational) -> BigRational,
    approx: impl Fn(f64, f64) -> f64,
) -> Number {
    match (a, b) {
        (Number::Exact(x), Number::Exact(y)) => Number::Exact(exact(x, y)),
        _ => Number::Approx(approx(a.to_f64(), b.to_f64())),
    }
}

impl Add for &Number {
    type Output = Number;
    fn add(self, rhs: &Number) -> Number {
        lift(self, rhs, |x, y| x + y, |x, y| x + y)
    }
}

impl Sub for &Number {
    type Output = Number;
    fn sub(self, rhs: &Number) -> Number {
        lift(self, rhs, |x, y| x - y, |x, y| x - y)
    }
}

impl Mul for &Number {
    type Output = Number;
    fn mul(self, rhs: &Number) -> Number {
        lift(self, rhs, |x, y| x * y, |x, y| x * y)
    }
}

impl Neg for &Number {
    type Output = Number;
    fn neg(self) -> Number {
        match self {
            Number::Exact(q) => Number::Exact(-q),
            Number::Approx(x) => Number::Approx(-x),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Number {
            type Output = Number;
            fn $method(self, rhs: Number) -> Number {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Number> for Number {
            type Output = Number;
            fn $method(self, rhs: &Number) -> Number {
                (&self).$method(rhs)
            }
        }
        impl $tr<Number> for &Number {
            type Output = Number;
            fn $method(self, rhs: Number) -> Number {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Number {
    type Output = Number;
    fn neg(self) -> Number {
        -&self
    }
}
