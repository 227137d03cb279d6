use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational")]
    Empty,
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational {0:?} (expected \"p\" or \"p/q\" with integers)")]
    Malformed(String),
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed(whole.to_string()));
    }
    BigInt::from_str(s).map_err(|_| ParseRationalError::Malformed(whole.to_string()))
}

/// Parses `"p"` or `"p/q"`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(t, s)?)),
        Some((n, d)) => {
            let num = parse_int(n.trim(), s)?;
            let den = parse_int(d.trim(), s)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical `p/q` text (`p` when the denominator is one).
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(", "))
}

/// Least common multiple of the denominators, as an integer.
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("0/5").unwrap(), rat(0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("/3").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn canonical_form() {
        let q = parse_rational("10/-4").unwrap();
        assert_eq!(fmt_rational(&q), "-5/2");
        assert_eq!(fmt_rational(&rat(0)), "0");
        assert!(q.denom() > &BigInt::from(0));
    }
}
