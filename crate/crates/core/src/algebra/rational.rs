//! Helpers around the exact scalar type.
//!
//! `Rational` is always in canonical form (positive denominator, coprime
//! numerator and denominator); `num-rational` normalizes on every
//! construction and arithmetic operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the strict document syntax: `"p"` or `"p/q"` with integer `p, q`.
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::BadRational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = parse_integer(num).ok_or_else(bad)?;
    let denom: BigInt = match den {
        Some(d) => parse_integer(d).ok_or_else(bad)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Parses the lenient command-line syntax: everything `parse_rational`
/// accepts plus exact decimals (`0.97202`) and scientific notation (`1e-5`).
pub fn parse_rational_lenient(text: &str) -> Result<Rational, AlgebraError> {
    if let Ok(r) = parse_rational(text) {
        return Ok(r);
    }
    let bad = || AlgebraError::BadRational(text.to_string());
    let text = text.trim();
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}0").parse().map_err(|_| bad())?;
    let digits = digits / BigInt::from(10);
    let scale = exponent - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut value = Rational::from_integer(digits * sign);
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(value)
}

/// Exact decimal expansion truncated toward zero after `digits` fractional
/// digits.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let negative = value.is_negative();
    let abs = value.abs();
    let (whole, mut rem) = abs.numer().div_rem(abs.denom());
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        out.push('.');
        let ten = BigInt::from(10);
        for _ in 0..digits {
            rem *= &ten;
            let (d, r) = rem.div_rem(abs.denom());
            out.push_str(&d.to_string());
            rem = r;
        }
    }
    out
}

/// Lossy conversion, used only for plotting output.
pub fn to_f64(value: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}

pub fn pow10(exp: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(10), exp as usize))
}

/// Fractional digits worth printing for a value known to within `precision`.
pub fn digits_for(precision: &Rational) -> usize {
    let mut d = 0;
    while d < 60 && pow10(d as u32).recip() > *precision {
        d += 1;
    }
    d
}

/// Decimal expansion rounded half away from zero to `digits` places.
pub fn to_decimal_rounded(value: &Rational, digits: usize) -> String {
    let scale = pow10(digits as u32);
    to_decimal(&((value * &scale).round() / scale), digits)
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

pub fn sign(value: &Rational) -> i8 {
    if value.is_positive() {
        1
    } else if value.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_syntax() {
        assert_eq!(parse_rational("7315083/5600").unwrap(), rat(7315083, 5600));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        for bad in ["", "1/0", "1.5", "a/b", "1/", "/2", "1e3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lenient_syntax() {
        assert_eq!(parse_rational_lenient("1e-5").unwrap(), rat(1, 100_000));
        assert_eq!(parse_rational_lenient("0.97202").unwrap(), rat(97202, 100_000));
        assert_eq!(parse_rational_lenient("-2.5E1").unwrap(), int(-25));
        assert_eq!(parse_rational_lenient(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational_lenient("98/100").unwrap(), rat(49, 50));
        assert!(parse_rational_lenient("1e").is_err());
        assert!(parse_rational_lenient(".").is_err());
    }

    #[test]
    fn canonical_display() {
        assert_eq!(rat(10, 4).to_string(), "5/2");
        assert_eq!(rat(-6, 3).to_string(), "-2");
        assert_eq!(rat(3, -9).to_string(), "-1/3");
    }

    #[test]
    fn digits_for_precision() {
        assert_eq!(digits_for(&rat(1, 100_000)), 5);
        assert_eq!(digits_for(&rat(1, 3)), 1);
        assert_eq!(digits_for(&int(2)), 0);
    }

    #[test]
    fn decimal_expansion() {
        assert_eq!(to_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(to_decimal(&rat(-7, 2), 3), "-3.500");
        assert_eq!(to_decimal(&int(12), 0), "12");
        assert_eq!(to_decimal(&rat(-1, 8), 2), "-0.12");
        assert_eq!(to_decimal_rounded(&rat(972019, 1_000_000), 5), "0.97202");
        assert_eq!(to_decimal_rounded(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal_rounded(&rat(2, 3), 0), "1");
    }
}
