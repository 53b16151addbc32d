//! Exact rationals as `"p/q"` strings, and exact parsing of decimal input
//! such as `0.9` or `1e-3`.

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Always `p/q`, even for integers (`1/1`).
pub fn format_ratio(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_big(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q`, an integer, or a decimal with optional exponent, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::domain(format!("cannot parse `{s}` as a rational number"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(digits * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(digits, Pow::pow(&ten, (-scale) as u32))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

pub fn parse_ratio_u64(s: &str) -> Result<Ratio<u64>> {
    let (p, q) = s.split_once('/').ok_or_else(|| Error::domain(format!("expected p/q, got `{s}`")))?;
    let p: u64 = p.parse().map_err(|_| Error::domain(format!("bad numerator in `{s}`")))?;
    let q: u64 = q.parse().map_err(|_| Error::domain(format!("bad denominator in `{s}`")))?;
    if q == 0 {
        return Err(Error::domain("zero denominator"));
    }
    Ok(Ratio::new(p, q))
}

pub fn ratio_to_big(r: &Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn big_one() -> BigRational {
    BigRational::one()
}

pub fn biguint_pow(base: u64, exp: u64) -> BigUint {
    Pow::pow(&BigUint::from(base), exp)
}

/// Serde adapter for `Ratio<u64>` as `"p/q"`.
pub mod ratio_string {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_ratio_u64(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `BigRational` as `"p/q"`.
pub mod big_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_big(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `BigUint` as a decimal string.
pub mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn parses_exactly() {
        assert_eq!(parse_rational("0.9").unwrap(), q(9, 10));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("1").unwrap(), q(1, 1));
        assert_eq!(parse_rational("154/171").unwrap(), q(154, 171));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        for bad in ["", ".", "abc", "1/0", "1.2.3", "1e", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_with_denominator() {
        assert_eq!(format_ratio(&Ratio::new(2, 2)), "1/1");
        assert_eq!(format_ratio(&Ratio::new(10, 12)), "5/6");
        assert_eq!(parse_ratio_u64("5/6").unwrap(), Ratio::new(5, 6));
    }
}
