//! Exact rational scalars.
//!
//! All linear algebra in this crate runs over arbitrary-precision rationals;
//! there is no floating point anywhere. Values serialize as `"p/q"` strings
//! with the `/q` part omitted when the denominator is one.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always reduced, denominator positive.
pub type Rational = Ratio<BigInt>;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics if `d` is zero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("too many `/` in `{0}`")]
    TooManySlashes(String),
}

/// Parses `"p"` or `"p/q"` with optional signs; rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let mut parts = s.split('/');
    let numer = parts.next().ok_or(ParseRationalError::Empty)?;
    let numer: BigInt = numer
        .trim()
        .parse()
        .map_err(|_| ParseRationalError::BadInteger(numer.to_string()))?;
    let denom: BigInt = match parts.next() {
        None => BigInt::one(),
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| ParseRationalError::BadInteger(d.to_string()))?,
    };
    if parts.next().is_some() {
        return Err(ParseRationalError::TooManySlashes(s.to_string()));
    }
    if denom.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Rough size measure (total magnitude bits) used for pivot selection.
pub(crate) fn bit_size(r: &Rational) -> u64 {
    r.numer().abs().bits() + r.denom().bits()
}
