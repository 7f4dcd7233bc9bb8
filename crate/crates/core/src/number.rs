//! Exact rational numbers and their decimal-string encoding.
//!
//! Instance data is stored as [`Rational`]. The textual form accepted by
//! [`parse_rational`] is an optional sign followed by either a decimal
//! (`"12"`, `"0.25"`, `".5"`) or a fraction (`"1/3"`). [`format_rational`]
//! emits the shortest exact form: an integer, a terminating decimal, or
//! `p/q` when the denominator has prime factors other than 2 and 5.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        let num = parse_digits(num, text)?;
        let den = parse_digits(den, text)?;
        if den.is_zero() {
            return Err(format!("zero denominator in {text:?}"));
        }
        Rational::new(num, den)
    } else {
        let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
        if whole.is_empty() && frac.is_empty() {
            return Err(format!("not a number: {text:?}"));
        }
        let digits = format!("{whole}{frac}");
        let num = parse_digits(&digits, text)?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        Rational::new(num, den)
    };
    Ok(if negative { -value } else { value })
}

fn parse_digits(digits: &str, original: &str) -> Result<BigInt, String> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a number: {original:?}"));
    }
    digits
        .parse::<BigInt>()
        .map_err(|e| format!("not a number: {original:?} ({e})"))
}

pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let den = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    let mut rest = den.clone();
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", value.numer(), den);
    }
    let places = twos.max(fives);
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = value.numer() * (&scale / &den);
    let sign = if scaled.is_negative() { "-" } else { "" };
    let digits = scaled.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = digits.split_at(digits.len() - places);
    format!("{sign}{whole}.{frac}")
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of all denominators, so that `value * lcm` is integral.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `value * scale` as an exact integer; `None` if not integral.
pub fn scaled_integer(value: &Rational, scale: &BigInt) -> Option<BigInt> {
    let scaled = value * Rational::from_integer(scale.clone());
    scaled.is_integer().then(|| scaled.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational("2/6").unwrap(), Rational::new(1.into(), 3.into()));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn formats_shortest_exact_form() {
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&parse_rational("1.50").unwrap()), "1.5");
        assert_eq!(format_rational(&parse_rational("-0.125").unwrap()), "-0.125");
        assert_eq!(format_rational(&parse_rational("0.05").unwrap()), "0.05");
        assert_eq!(format_rational(&parse_rational("1/3").unwrap()), "1/3");
        assert_eq!(format_rational(&parse_rational("-7/6").unwrap()), "-7/6");
    }

    #[test]
    fn scaling_clears_denominators() {
        let values = [parse_rational("1/2").unwrap(), parse_rational("2/3").unwrap()];
        let d = common_denominator(values.iter());
        assert_eq!(d, BigInt::from(6));
        assert_eq!(scaled_integer(&values[0], &d), Some(BigInt::from(3)));
        assert_eq!(scaled_integer(&values[1], &BigInt::from(2)), None);
    }

    proptest::proptest! {
        #[test]
        fn format_then_parse_is_identity(num in -10_000i64..10_000, den in 1i64..2_000) {
            let value = Rational::new(num.into(), den.into());
            proptest::prop_assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
        }
    }
}
