//! Exact scalars and the field abstraction used by every linear-algebra routine.
//!
//! Two fields are provided: [`Rational`] (arbitrary precision rationals) and
//! [`RatFn`](crate::ratfn::RatFn) (rational functions over ℚ in finitely many
//! variables). Structure constants, forms and operators are generic over
//! [`Field`], so the same code runs with a numeric parameter `t = 2` or a
//! symbolic one.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratfn::RatFn;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A computable field with exact equality.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;
    /// Embeds the scalar into the rational-function field (the coefficient
    /// ring of superfunctions).
    fn to_ratfn(&self) -> RatFn;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// The value as a rational number, when it is a constant.
    fn as_rational(&self) -> Option<Rational> {
        self.to_ratfn().as_constant()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_ratfn(&self) -> RatFn {
        RatFn::constant(self.clone())
    }
}

/// `n/1`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"p/q"`, `"-p/q"` (ASCII or unicode minus). Decimal points
/// are rejected: inputs must be exact.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    if cleaned.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let n = BigInt::from_str(num.strip_prefix('+').unwrap_or(num))
        .map_err(|_| Error::Parse(format!("invalid rational literal `{s}`")))?;
    let d = BigInt::from_str(den)
        .map_err(|_| Error::Parse(format!("invalid rational literal `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical string form: `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow; fall back to a scaled division.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn sign(q: &Rational) -> i8 {
    if Zero::is_zero(q) {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Serde adapters that write rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for (text, canon) in [("3", "3"), ("-1/2", "-1/2"), ("4/8", "1/2"), ("2/-4", "-1/2"), ("\u{2212}3/9", "-1/3")] {
            assert_eq!(format_rational(&parse_rational(text).unwrap()), canon);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn field_ops() {
        let a = frac(1, 3);
        let b = frac(-2, 5);
        assert_eq!(Field::add(&a, &b), frac(-1, 15));
        assert_eq!(Field::mul(&a, &b), frac(-2, 15));
        assert_eq!(Field::inv(&b).unwrap(), frac(-5, 2));
        assert!(Field::inv(&int(0)).is_none());
    }
}
