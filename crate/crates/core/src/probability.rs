//! Exact rationals, probabilities, and their decimal renderings.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Pow, Zero};

use crate::combinatorics::Natural;

/// Exact nonnegative rational, always in lowest terms.
pub type Rational = Ratio<Natural>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbabilityError {
    ZeroDenominator,
    ExceedsOne,
}

impl fmt::Display for ProbabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbabilityError::ZeroDenominator => f.write_str("denominator must be positive"),
            ProbabilityError::ExceedsOne => f.write_str("probability must not exceed 1"),
        }
    }
}

impl core::error::Error for ProbabilityError {}

/// A probability held as a reduced ratio of naturals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProbability(Rational);

impl ExactProbability {
    pub fn new(numerator: Natural, denominator: Natural) -> Result<Self, ProbabilityError> {
        if denominator.is_zero() {
            return Err(ProbabilityError::ZeroDenominator);
        }
        Self::from_ratio(Rational::new(numerator, denominator))
    }

    pub fn from_ratio(ratio: Rational) -> Result<Self, ProbabilityError> {
        if ratio > Rational::one() {
            return Err(ProbabilityError::ExceedsOne);
        }
        Ok(ExactProbability(ratio))
    }

    /// For values the caller has already proven to lie in `[0, 1]`.
    pub(crate) fn from_ratio_unchecked(ratio: Rational) -> Self {
        debug_assert!(ratio <= Rational::one());
        ExactProbability(ratio)
    }

    pub fn zero() -> Self {
        ExactProbability(Rational::zero())
    }

    pub fn one() -> Self {
        ExactProbability(Rational::one())
    }

    pub fn numer(&self) -> &Natural {
        self.0.numer()
    }

    pub fn denom(&self) -> &Natural {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &Rational {
        &self.0
    }

    pub fn into_ratio(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn complement(&self) -> Self {
        ExactProbability(Rational::one() - &self.0)
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        to_decimal(&self.0, digits)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for ExactProbability {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ratio = parse_rational(s)?;
        ExactProbability::from_ratio(ratio).map_err(|_| ParseRationalError::new(s, "exceeds 1"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: String,
    reason: &'static str,
}

impl ParseRationalError {
    fn new(input: &str, reason: &'static str) -> Self {
        ParseRationalError {
            input: input.to_string(),
            reason,
        }
    }
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as an exact rational: {}", self.input, self.reason)
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `"a/b"`, `"123"`, `"0.95"`, `".5"` or `"2.5e-3"` exactly.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let s = input.trim();
    let err = |reason| ParseRationalError::new(input, reason);
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_digits(num.trim()).ok_or_else(|| err("bad numerator"))?;
        let den = parse_digits(den.trim()).ok_or_else(|| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let mantissa = mantissa.strip_prefix('+').unwrap_or(mantissa);
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    let digits = format!("{int_part}{frac_part}");
    let value = parse_digits(&digits).ok_or_else(|| err("bad digits"))?;
    let scale = exponent - frac_part.len() as i64;
    let ten = Natural::from(10u32);
    if scale >= 0 {
        Ok(Rational::from_integer(value * Pow::pow(&ten, scale as u64)))
    } else {
        Ok(Rational::new(value, Pow::pow(&ten, scale.unsigned_abs())))
    }
}

fn parse_digits(s: &str) -> Option<Natural> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Natural::parse_bytes(s.as_bytes(), 10)
}

/// Renders `value` to `digits` significant digits, rounding half to even.
///
/// Trailing zeros are dropped. Values whose decimal exponent is below -6 or
/// at least `digits` use scientific notation (`1.5e-9`).
pub fn to_decimal(value: &Rational, digits: u32) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return "0".to_string();
    }
    let ten = Natural::from(10u32);
    let num = value.numer();
    let den = value.denom();

    // Decimal exponent e with 10^e <= value < 10^(e+1).
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    if scaled_cmp(num, den, exp) == core::cmp::Ordering::Less {
        exp -= 1;
    }

    let (mut mantissa, mut exp) = round_significant(num, den, exp, digits, &ten);
    if mantissa == Pow::pow(&ten, digits) {
        // Rounding carried into a new digit, e.g. 9.99 -> 10.0.
        mantissa /= &ten;
        exp += 1;
    }

    let text = mantissa.to_string();
    debug_assert_eq!(text.len(), digits as usize);
    let trimmed = text.trim_end_matches('0');
    let trimmed = if trimmed.is_empty() { "0" } else { trimmed };

    if exp < -6 || exp >= digits as i64 {
        let (lead, rest) = trimmed.split_at(1);
        if rest.is_empty() {
            format!("{lead}e{exp}")
        } else {
            format!("{lead}.{rest}e{exp}")
        }
    } else if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("0.{zeros}{trimmed}")
    } else {
        let int_len = exp as usize + 1;
        if trimmed.len() <= int_len {
            let pad = "0".repeat(int_len - trimmed.len());
            format!("{trimmed}{pad}")
        } else {
            let (int_digits, frac_digits) = trimmed.split_at(int_len);
            format!("{int_digits}.{frac_digits}")
        }
    }
}

/// Compares `num/den` against `10^exp`.
fn scaled_cmp(num: &Natural, den: &Natural, exp: i64) -> core::cmp::Ordering {
    let ten = Natural::from(10u32);
    if exp >= 0 {
        num.cmp(&(den * Pow::pow(&ten, exp as u64)))
    } else {
        (num * Pow::pow(&ten, exp.unsigned_abs())).cmp(den)
    }
}

fn round_significant(
    num: &Natural,
    den: &Natural,
    exp: i64,
    digits: u32,
    ten: &Natural,
) -> (Natural, i64) {
    // mantissa = round(value * 10^(digits - 1 - exp))
    let shift = digits as i64 - 1 - exp;
    let (n, d) = if shift >= 0 {
        (num * Pow::pow(ten, shift as u64), den.clone())
    } else {
        (num.clone(), den * Pow::pow(ten, shift.unsigned_abs()))
    };
    let (q, r) = n.div_rem(&d);
    let twice = r * 2u32;
    let round_up = match twice.cmp(&d) {
        core::cmp::Ordering::Greater => true,
        core::cmp::Ordering::Less => false,
        core::cmp::Ordering::Equal => q.is_odd(),
    };
    let q = if round_up { q + 1u32 } else { q };
    (q, exp)
}
