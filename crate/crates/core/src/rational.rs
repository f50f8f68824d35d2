//! Exact rational exponents.
//!
//! Every exponent in the system (reducibility points, tuple entries, segment
//! endpoints) is a [`Rational`]. Values are kept in lowest terms with a
//! positive denominator, so structural equality is numeric equality.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision fraction, always normalized.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("invalid rational `{token}`: expected `[-]digits` or `[-]digits/digits`")]
    Malformed { token: String },
    #[error("invalid rational `{token}`: zero denominator")]
    ZeroDenominator { token: String },
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Least integer not smaller than `self`.
    pub fn ceil(&self) -> BigInt {
        let (q, r) = self.0.numer().div_mod_floor(self.0.denom());
        if r.is_zero() {
            q
        } else {
            q + 1
        }
    }

    pub fn half(&self) -> Rational {
        Rational(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }

    /// `self + n` for a machine integer shift.
    pub fn shift(&self, n: i64) -> Rational {
        Rational(&self.0 + BigRational::from_integer(BigInt::from(n)))
    }

    /// `self - other` when it is an integer.
    pub fn int_diff(&self, other: &Rational) -> Option<BigInt> {
        let d = &self.0 - &other.0;
        d.is_integer().then(|| d.to_integer())
    }

    /// `self - other` when it is an integer that fits in an `i64`.
    pub fn steps_from(&self, other: &Rational) -> Option<i64> {
        self.int_diff(other).and_then(|d| d.to_i64())
    }

    /// True when `self - other` is an integer (same coset of the lattice).
    pub fn same_lattice(&self, other: &Rational) -> bool {
        (&self.0 - &other.0).is_integer()
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = || ParseRationalError::Malformed {
            token: text.to_string(),
        };
        let digits = |s: &str, signed: bool| -> Option<BigInt> {
            let body = if signed {
                s.strip_prefix('-').unwrap_or(s)
            } else {
                s
            };
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            s.parse::<BigInt>().ok()
        };
        let (numer, denom) = match text.split_once('/') {
            Some((n, d)) => (
                digits(n, true).ok_or_else(malformed)?,
                digits(d, false).ok_or_else(malformed)?,
            ),
            None => (digits(text, true).ok_or_else(malformed)?, BigInt::one()),
        };
        if denom.is_zero() {
            return Err(ParseRationalError::ZeroDenominator {
                token: text.to_string(),
            });
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

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

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);

/// Shorthand for tests and examples: `q(3, 2)` is 3/2.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_normalizes() {
        assert_eq!("3/2".parse::<Rational>().unwrap(), q(3, 2));
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        let zero = "0/5".parse::<Rational>().unwrap();
        assert_eq!(zero, Rational::zero());
        assert_eq!(zero.denom(), &BigInt::one());
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
    }

    #[test]
    fn rejects_malformed_tokens() {
        for bad in ["1.5", "", "/2", "3/", "+3", "3/-2", "a", "1/2/3", "- 1"] {
            let err = bad.parse::<Rational>().unwrap_err();
            assert!(err.to_string().contains(&format!("`{bad}`")), "{err}");
        }
        assert_eq!(
            "1/0".parse::<Rational>().unwrap_err(),
            ParseRationalError::ZeroDenominator {
                token: "1/0".into()
            }
        );
    }

    #[test]
    fn ceiling_examples() {
        assert_eq!(q(3, 2).ceil(), BigInt::from(2));
        assert_eq!(Rational::from(2).ceil(), BigInt::from(2));
        assert_eq!(q(-1, 2).ceil(), BigInt::from(0));
        assert_eq!(q(-3, 2).ceil(), BigInt::from(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(-3, 2).to_string(), "-3/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn ceiling_brackets_value(n in -10_000i64..10_000, d in 1i64..50) {
            let x = q(n, d);
            let c = Rational::from_integer(x.ceil());
            prop_assert!(c.shift(-1) < x);
            prop_assert!(x <= c);
        }

        #[test]
        fn render_parse_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
            let x = q(n, d);
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
