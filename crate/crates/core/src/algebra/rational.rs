//! Helpers around [`BigRational`], the exact scalar type of the crate.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7/2"` and similar. Whitespace is ignored.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return None;
    }
    let value = Rational::from_str(&cleaned).ok()?;
    Some(value)
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn rational_pow(base: &Rational, exponent: i64) -> Option<Rational> {
    if exponent < 0 && base.is_zero() {
        return None;
    }
    let magnitude = exponent.unsigned_abs();
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = magnitude;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    if exponent < 0 {
        Some(acc.recip())
    } else {
        Some(acc)
    }
}

/// Square root of a rational if it is a perfect square.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer().magnitude().sqrt();
    let d = value.denom().magnitude().sqrt();
    let root = Rational::new(BigInt::from(n), BigInt::from(d));
    if &(&root * &root) == value {
        Some(root)
    } else {
        None
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the numerators of `values` (zero if all vanish).
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_and_parsing() {
        assert_eq!(ratio(6, -4), ratio(-3, 2));
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(0)), "0");
        assert_eq!(parse_rational(" -7/2 "), Some(ratio(-7, 2)));
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn powers_and_roots() {
        assert_eq!(rational_pow(&ratio(2, 3), -2), Some(ratio(9, 4)));
        assert_eq!(rational_pow(&rat(0), -1), None);
        assert_eq!(rational_pow(&rat(5), 0), Some(rat(1)));
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(5)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
    }
}
