//! Exact scalar arithmetic.
//!
//! Every computation in this crate is exact: zero tests decide simplicity
//! criteria, kernel ranks and quotient reductions, so the scalar type must be
//! an exact field. The engine is generic over [`Scalar`]; the shipped
//! implementation is [`num_rational::BigRational`], re-exported at the crate
//! root as [`crate::Q`].

use num_bigint::{BigInt, Sign};
use num_traits::{Num, One, Signed, Zero};
use std::fmt;
use std::hash::Hash;

/// An exact field scalar with enough rational structure for the engine's
/// decision procedures.
///
/// Beyond ordinary field arithmetic this exposes construction from machine
/// integers, strict `p/q` parsing, lowest-terms numerator/denominator access
/// and an exact square-root test (used to decide whether a quadratic has
/// rational roots). Floating point types cannot implement this contract.
pub trait Scalar:
    Num + Signed + Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    /// `numer / denom`; panics if `denom == 0`.
    fn from_fraction(numer: i64, denom: i64) -> Self;

    /// Parse a rational literal: optional sign, decimal integer, optionally
    /// followed by `/` and a positive decimal integer.
    fn parse_str(s: &str) -> Result<Self, ParseScalarError>;

    /// Lowest-terms `(numerator, denominator)` with positive denominator.
    fn numer_denom(&self) -> (BigInt, BigInt);

    /// The exact square root, when the value is the square of a rational.
    fn exact_sqrt(&self) -> Option<Self>;
}

/// Error from [`Scalar::parse_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{input}`: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

impl ParseScalarError {
    fn new(input: &str, reason: &str) -> Self {
        ParseScalarError {
            input: input.to_owned(),
            reason: reason.to_owned(),
        }
    }
}

fn parse_decimal(s: &str, input: &str) -> Result<BigInt, ParseScalarError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::new(input, "expected a decimal integer"));
    }
    BigInt::from_str_radix(s, 10).map_err(|e| ParseScalarError::new(input, &e.to_string()))
}

impl Scalar for num_rational::BigRational {
    fn from_i64(n: i64) -> Self {
        num_rational::BigRational::from_integer(BigInt::from(n))
    }

    fn from_fraction(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        num_rational::BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn parse_str(s: &str) -> Result<Self, ParseScalarError> {
        let (sign, body) = match s.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &s[1..]),
            Some(b'-') => (Sign::Minus, &s[1..]),
            _ => (Sign::Plus, s),
        };
        let (num_str, den_str) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let mut numer = parse_decimal(num_str, s)?;
        if sign == Sign::Minus {
            numer = -numer;
        }
        let denom = match den_str {
            Some(d) => {
                let d = parse_decimal(d, s)?;
                if d.is_zero() {
                    return Err(ParseScalarError::new(s, "denominator must be positive"));
                }
                d
            }
            None => BigInt::one(),
        };
        Ok(num_rational::BigRational::new(numer, denom))
    }

    fn numer_denom(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let sqrt_of = |n: &BigInt| -> Option<BigInt> {
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        };
        let numer = sqrt_of(self.numer())?;
        let denom = sqrt_of(self.denom())?;
        Some(num_rational::BigRational::new(numer, denom))
    }
}

/// `base^exp` for any integer exponent; `base` must be nonzero when `exp < 0`.
pub fn int_pow<S: Scalar>(base: &S, exp: i64) -> S {
    if exp == 0 {
        return S::one();
    }
    let mut acc = S::one();
    for _ in 0..exp.unsigned_abs() {
        acc = acc * base.clone();
    }
    if exp < 0 {
        acc = S::one() / acc;
    }
    acc
}

/// Binomial coefficient as a scalar.
pub fn binomial<S: Scalar>(n: u32, k: u32) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut num = S::one();
    let mut den = S::one();
    for i in 0..k {
        num = num * S::from_i64((n - i) as i64);
        den = den * S::from_i64((i + 1) as i64);
    }
    num / den
}

/// Reduced fraction `a/b` rendered by the scalar's `Display` (lowest terms,
/// positive denominator, `p/q` or bare `p`).
pub fn to_literal<S: Scalar>(x: &S) -> String {
    x.to_string()
}
