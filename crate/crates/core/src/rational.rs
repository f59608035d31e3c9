//! Exact rational numbers and their text forms.
//!
//! Every probability, valuation and payoff in the crate is a [`Rational`].
//! Text input accepts `p/q`, integers and finite decimals; decimals are
//! converted exactly (`"4.6"` is `23/5`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_u64(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("floor out of i64 range")
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("ceil out of i64 range")
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Renders `p/q` in lowest terms, or just `p` for integers.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125`.
pub fn parse(input: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let mantissa: BigInt = format!("{whole}{frac}").parse().map_err(|_| err())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

/// Decimal approximation with `digits` fractional digits, rounded half away
/// from zero. Display only.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse("23/5").unwrap(), rat(23, 5));
        assert_eq!(parse("4.6").unwrap(), rat(23, 5));
        assert_eq!(parse("8").unwrap(), int(8));
        assert_eq!(parse("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse(".5").unwrap(), rat(1, 2));
        assert_eq!(parse("6/4").unwrap(), rat(3, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1.2.3", "1e5", "-", "."] {
            assert!(parse(s).is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format(&rat(2, 4)), "1/2");
        assert_eq!(format(&rat(10, 2)), "5");
        assert_eq!(format(&rat(-3, 9)), "-1/3");
    }

    #[test]
    fn decimal_rendering_rounds() {
        assert_eq!(to_decimal(&rat(1, 3), 3), "0.333");
        assert_eq!(to_decimal(&rat(2, 3), 2), "0.67");
        assert_eq!(to_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&int(5), 0), "5");
        assert_eq!(to_decimal(&rat(-1, 1000), 2), "0.00");
    }
}
