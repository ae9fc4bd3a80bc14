//! Exact rational arithmetic helpers.
//!
//! Every numeric result in the crate is an [`ExactRational`]. The type is a
//! plain alias for an arbitrary-precision rational; this module adds the
//! integer helpers the formulas need (factorials, binomials, signed powers)
//! and the text/JSON rendering used by the command line.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

pub type ExactRational = BigRational;

/// Builds `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `base^exp` for a signed exponent. `0^0 = 1`; a zero base with a negative
/// exponent panics.
pub fn pow_signed(base: &ExactRational, exp: i64) -> ExactRational {
    let mut acc = ExactRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Floor of `num/den` and the remainder, `den > 0`.
pub fn floor_div(num: i64, den: i64) -> (i64, i64) {
    num.div_mod_floor(&den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Plain,
    Json,
}

/// Renders a rational in lowest terms with a positive denominator.
///
/// Plain mode prints `p/q`, or just `p` when the value is an integer. JSON mode
/// always prints both fields as decimal strings: `{"num":"p","den":"q"}`.
pub fn render_rational(q: &ExactRational, format: RenderFormat) -> String {
    // BigRational is always kept reduced with a positive denominator.
    match format {
        RenderFormat::Plain if q.is_integer() => q.numer().to_string(),
        RenderFormat::Plain => format!("{}/{}", q.numer(), q.denom()),
        RenderFormat::Json => format!(r#"{{"num":"{}","den":"{}"}}"#, q.numer(), q.denom()),
    }
}

/// JSON value with the same fields as [`RenderFormat::Json`].
pub fn json_value(q: &ExactRational) -> serde_json::Value {
    serde_json::json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

/// Parses `p`, `p/q` or `-p/q` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).or_else(|_| invalid(format!("bad numerator in {s:?}")))?;
    let den = BigInt::from_str(den).or_else(|_| invalid(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return invalid(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn render_examples() {
        assert_eq!(render_rational(&rat(1, 2), RenderFormat::Plain), "1/2");
        assert_eq!(render_rational(&rat(-3, 6), RenderFormat::Plain), "-1/2");
        assert_eq!(render_rational(&rat(4, 1), RenderFormat::Json), r#"{"num":"4","den":"1"}"#);
        assert_eq!(render_rational(&rat(4, 1), RenderFormat::Plain), "4");
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(pow_signed(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow_signed(&rat(0, 1), 0), rat(1, 1));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational(" -2/4 ").unwrap(), rat(-1, 2));
    }

    proptest! {
        #[test]
        fn plain_rendering_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = rat(n, d);
            let text = render_rational(&q, RenderFormat::Plain);
            prop_assert_eq!(parse_rational(&text).unwrap(), q);
        }
    }
}
