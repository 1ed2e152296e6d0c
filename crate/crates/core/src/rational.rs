//! Exact rational scalars and their text form.
//!
//! Payoffs are accepted either as decimal literals (`2.9`, `-0.25`, `6`) or as
//! `p/q` fractions (`29/10`). Both parse to the same reduced fraction.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to `q`.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Exact rational form of a float point.
pub fn point_from_f64(x: &[f64; 4]) -> Option<[Rational; 4]> {
    Some([from_f64(x[0])?, from_f64(x[1])?, from_f64(x[2])?, from_f64(x[3])?])
}

pub fn point_to_f64(x: &[Rational; 4]) -> [f64; 4] {
    [to_f64(&x[0]), to_f64(&x[1]), to_f64(&x[2]), to_f64(&x[3])]
}

/// `p/q` text, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"p/q"`, a decimal literal, or an integer.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::ParseRational(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }

    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut digits = String::with_capacity(whole.len() + frac.len());
    digits.push_str(whole);
    digits.push_str(frac);
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let mut denom = BigInt::one();
    for _ in 0..frac.len() {
        denom *= 10;
    }
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// `ceil(m / 2)` and `floor(m / 2)`.
pub(crate) fn halves(m: u32) -> (u32, u32) {
    (m.div_ceil(2), m / 2)
}
