//! Exact rational literals: `"p"`, `"-p"` or `"p/q"` with `q > 0`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses a rational literal exactly. Non-reduced inputs such as `"4/6"` are
/// accepted and reduced; signs other than a single leading `-` are not.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let malformed = || RationalParseError::Malformed(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !digits(numer) || denom.is_some_and(|d| !digits(d)) {
        return Err(malformed());
    }
    let mut numer: BigInt = numer.parse().map_err(|_| malformed())?;
    if negative {
        numer = -numer;
    }
    let denom: BigInt = match denom {
        Some(d) => d.parse().map_err(|_| malformed())?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    debug_assert!(denom.is_positive());
    Ok(Rational::new(numer, denom))
}

/// Lowest-terms rendering: `"3/2"`, `"-7"`, `"0"`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}
