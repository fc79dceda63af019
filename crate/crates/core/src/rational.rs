//! Exact rational numbers and their text forms.
//!
//! Every cost, threshold and ratio in the crate is a [`Rational`]. Floating
//! point only appears when a value is rendered for people.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i128>;

/// Significant digits used for decimal renderings (CSV, reports).
pub const SIGNIFICANT_DIGITS: u32 = 12;

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.125` or `-3.5`.
///
/// The conversion is exact: `0.1` becomes `1/10`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let err = || Error::parse("rational", input);
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i128 = num.trim().parse().map_err(|_| err())?;
        let den: i128 = den.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(err)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut num: i128 = 0;
    for b in whole.bytes().chain(frac.bytes()) {
        num = num.checked_mul(10)?.checked_add(i128::from(b - b'0'))?;
    }
    let den = 10i128.checked_pow(u32::try_from(frac.len()).ok()?)?;
    let value = Rational::new(num, den);
    Some(if negative { -value } else { value })
}

/// Renders `p/q`, or just `p` for integers.
pub fn format_exact(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    match (value.numer().to_f64(), value.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    }
}

/// Decimal rendering rounded to [`SIGNIFICANT_DIGITS`] significant digits,
/// computed exactly and with trailing zeros trimmed.
pub fn format_decimal(value: &Rational) -> String {
    format_significant(value, SIGNIFICANT_DIGITS)
}

pub fn format_significant(value: &Rational, digits: u32) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    exact_significant(value, digits).unwrap_or_else(|| {
        // Out of i128 range: fall back to the float rendering.
        let v = to_f64(value);
        format!("{v:.*e}", (digits - 1) as usize)
    })
}

/// Returns `(mantissa, exponent)` with `mantissa` having exactly `digits`
/// digits and `|value| ≈ mantissa * 10^(exponent - digits + 1)`.
fn round_significant(value: &Rational, digits: u32) -> Option<(i128, i32)> {
    let abs = value.abs();
    let mut exponent = decimal_exponent(&abs)?;
    let mut mantissa = scaled_round(&abs, digits as i32 - 1 - exponent)?;
    if mantissa >= 10i128.checked_pow(digits)? {
        exponent += 1;
        mantissa = scaled_round(&abs, digits as i32 - 1 - exponent)?;
    }
    Some((mantissa, exponent))
}

/// `floor(log10(abs))` for a positive rational.
fn decimal_exponent(abs: &Rational) -> Option<i32> {
    let mut exponent = 0i32;
    let mut probe = Rational::one();
    let ten = int(10);
    if *abs >= probe {
        while *abs >= probe * ten {
            probe = num_traits::CheckedMul::checked_mul(&probe, &ten)?;
            exponent += 1;
        }
    } else {
        while *abs < probe {
            probe = num_traits::CheckedDiv::checked_div(&probe, &ten)?;
            exponent -= 1;
        }
    }
    Some(exponent)
}

/// `round(abs * 10^shift)`, halves rounded away from zero.
fn scaled_round(abs: &Rational, shift: i32) -> Option<i128> {
    let scale = 10i128.checked_pow(shift.unsigned_abs())?;
    let (num, den) = if shift >= 0 {
        (abs.numer().checked_mul(scale)?, *abs.denom())
    } else {
        (*abs.numer(), abs.denom().checked_mul(scale)?)
    };
    let (q, r) = num.div_rem(&den);
    Some(if r.checked_mul(2)? >= den { q + 1 } else { q })
}

fn exact_significant(value: &Rational, digits: u32) -> Option<String> {
    let (mantissa, exponent) = round_significant(value, digits)?;
    let mut text = mantissa.to_string();
    let point = exponent + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat(point.unsigned_abs() as usize), text)
    } else if point as usize >= text.len() {
        text.push_str(&"0".repeat(point as usize - text.len()));
        text
    } else {
        let (a, b) = text.split_at(point as usize);
        format!("{a}.{b}")
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    Some(if value.is_negative() {
        format!("-{body}")
    } else {
        body
    })
}

/// Recovers the rational behind a decimal written by [`format_decimal`].
///
/// The decimal pins the value to a rounding interval; the simplest fraction
/// inside it is returned, which restores every value whose denominator is
/// small compared to the printed precision.
pub fn recover_from_decimal(text: &str) -> Result<Rational> {
    let shown = parse_rational(text)?;
    if shown.is_zero() {
        return Ok(shown);
    }
    let exponent =
        decimal_exponent(&shown.abs()).ok_or_else(|| Error::parse("decimal", text))?;
    let half_unit = Rational::new(1, 2)
        * pow10(exponent - SIGNIFICANT_DIGITS as i32 + 1)
            .ok_or_else(|| Error::parse("decimal", text))?;
    Ok(simplest_between(shown - half_unit, shown + half_unit))
}

fn pow10(e: i32) -> Option<Rational> {
    let p = 10i128.checked_pow(e.unsigned_abs())?;
    Some(if e >= 0 {
        int(p)
    } else {
        Rational::new(1, p)
    })
}

/// The rational with the smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: Rational, hi: Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(-hi, -lo)
    } else {
        Rational::zero()
    }
}

fn simplest_positive(lo: Rational, hi: Rational) -> Rational {
    let floor = lo.floor();
    if floor == lo {
        return lo;
    }
    if floor + Rational::one() <= hi {
        return floor + Rational::one();
    }
    let inner = simplest_positive((hi - floor).recip(), (lo - floor).recip());
    floor + inner.recip()
}

/// JSON rendering of a rational: the exact fraction plus an approximation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: String,
    pub approx: f64,
}

impl From<&Rational> for ExactValue {
    fn from(value: &Rational) -> Self {
        ExactValue {
            exact: format_exact(value),
            approx: to_f64(value),
        }
    }
}

impl ExactValue {
    pub fn value(&self) -> Result<Rational> {
        parse_rational(&self.exact)
    }
}

/// Serde adapter writing rationals as [`ExactValue`] objects; `None` becomes
/// `null`.
pub mod serde_exact {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        ExactValue::from(value).serialize(s)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            value.as_ref().map(ExactValue::from).serialize(s)
        }
    }
}

/// Serde adapter: rationals as `p/q` strings, accepting plain numbers too.
pub mod serde_text {
    use super::*;
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_exact(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        let text = match &raw {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(de::Error::custom(format!("expected a rational, got {other}"))),
        };
        parse_rational(&text).map_err(de::Error::custom)
    }

    pub mod list {
        use super::*;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(values.iter().map(format_exact))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<serde_json::Value>::deserialize(d)?;
            raw.into_iter()
                .map(|v| {
                    let text = match v {
                        serde_json::Value::String(s) => s,
                        serde_json::Value::Number(n) => n.to_string(),
                        other => {
                            return Err(de::Error::custom(format!(
                                "expected a rational, got {other}"
                            )))
                        }
                    };
                    parse_rational(&text).map_err(de::Error::custom)
                })
                .collect()
        }
    }
}
