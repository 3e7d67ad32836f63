//! Exact integer and rational primitives shared by every route.
//!
//! Values are carried as [`num_bigint::BigInt`] and [`num_rational::BigRational`];
//! the latter is always stored reduced with a positive denominator, which is
//! also what its `Display` impl prints ("p/q", or a bare integer when q = 1).

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type ExactInteger = BigInt;

/// Reduced fraction with a positive denominator.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}: expected [sign]digits[/digits]")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: u32, k: i64) -> ExactInteger {
    if k < 0 || k > n as i64 {
        return BigInt::zero();
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The falling product `(k+1)(k+2)...n`, i.e. `n!/k!`. Empty (= 1) when `k >= n`.
pub fn falling_ratio(n: u32, k: u32) -> ExactInteger {
    let mut acc = BigInt::one();
    for j in (k + 1)..=n {
        acc *= j;
    }
    acc
}

pub fn factorial(n: u32) -> ExactInteger {
    falling_ratio(n, 0)
}

/// `base^e` with `0^0 = 1`.
pub fn pow_conv(base: &ExactRational, e: u32) -> ExactRational {
    if e == 0 {
        return BigRational::one();
    }
    Pow::pow(base, e)
}

/// Integer power with `0^0 = 1`.
pub fn pow_int(base: &ExactInteger, e: u32) -> ExactInteger {
    if e == 0 {
        return BigInt::one();
    }
    Pow::pow(base, e)
}

pub fn is_integer(q: &ExactRational) -> bool {
    q.denom().is_one()
}

/// Parses `[+-]digits[/digits]` with a nonzero denominator.
pub fn parse_rational(text: &str) -> Result<ExactRational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(text.to_string());
    let (sign, body) = match text.as_bytes()[0] {
        b'-' => (-1, &text[1..]),
        b'+' => (1, &text[1..]),
        _ => (1, text),
    };
    let (num_digits, den_digits) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(num_digits) || den_digits.is_some_and(|d| !all_digits(d)) {
        return Err(malformed());
    }
    let num = BigInt::from_str(num_digits).map_err(|_| malformed())? * sign;
    let den = match den_digits {
        Some(d) => BigInt::from_str(d).map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text: reduced "p/q" with q > 0, integers without "/1".
pub fn format_rational(q: &ExactRational) -> String {
    q.to_string()
}

/// Exact `num/den` where both share no factor; used by tests to confirm reduction.
pub fn is_reduced(q: &ExactRational) -> bool {
    q.denom().is_positive() && q.numer().abs().gcd(q.denom()).is_one()
}
