//! Exact rational parsing and tolerance snapping for decimal input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Parses `"3"`, `"-7/4"`, `"0.125"` or `"1.5e-3"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().map_err(|_| bad())?
    };
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// The rational with the smallest denominator (then smallest magnitude) in
/// the closed interval `[lo, hi]`.
pub fn simplest_in_interval(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        BigRational::zero()
    }
}

fn simplest_positive(lo: &BigRational, hi: &BigRational) -> BigRational {
    let ceil = lo.ceil();
    if &ceil <= hi {
        return ceil;
    }
    // lo is not an integer and floor(lo) == floor(hi)
    let fl = lo.floor();
    let inner_lo = (hi - &fl).recip();
    let inner_hi = (lo - &fl).recip();
    fl + simplest_positive(&inner_lo, &inner_hi).recip()
}

/// A coordinate that was moved by snapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snap {
    pub input: String,
    pub exact: BigRational,
    pub snapped: BigRational,
}

/// Parses `s` and, if a tolerance is given, replaces it by the simplest
/// rational within `tol`. Returns the value and a record when it moved.
pub fn parse_snapped(s: &str, tol: Option<&BigRational>) -> Result<(BigRational, Option<Snap>)> {
    let exact = parse_rational(s)?;
    let Some(tol) = tol else {
        return Ok((exact, None));
    };
    let snapped = simplest_in_interval(&(&exact - tol), &(&exact + tol));
    if snapped == exact {
        Ok((exact, None))
    } else {
        let snap = Snap {
            input: s.to_string(),
            exact,
            snapped: snapped.clone(),
        };
        Ok((snapped, Some(snap)))
    }
}

/// Converts a positive `f64` tolerance to an exact rational.
pub fn tolerance_from_f64(tol: f64) -> Result<BigRational> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
    }
    BigRational::from_float(tol).ok_or_else(|| Error::Parse(format!("bad tolerance {tol}")))
}

/// Least common multiple of the denominators.
pub(crate) fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Nearest `f64`; exact for small values, rounded otherwise.
pub(crate) fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-7/4").unwrap(), q(-7, 4));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("1.5e-3").unwrap(), q(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), q(200, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_in_interval(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(simplest_in_interval(&q(-1, 2), &q(1, 3)), q(0, 1));
        assert_eq!(simplest_in_interval(&q(-4, 10), &q(-3, 10)), q(-1, 3));
        assert_eq!(simplest_in_interval(&q(7, 5), &q(7, 5)), q(7, 5));
        assert_eq!(simplest_in_interval(&q(5, 2), &q(7, 2)), q(3, 1));
    }

    #[test]
    fn snapping_reports() {
        let tol = tolerance_from_f64(1e-6).unwrap();
        let (v, snap) = parse_snapped("0.3333333", Some(&tol)).unwrap();
        assert_eq!(v, q(1, 3));
        assert_eq!(snap.unwrap().exact, q(3333333, 10_000_000));
        let (v, snap) = parse_snapped("0.25", Some(&tol)).unwrap();
        assert_eq!(v, q(1, 4));
        assert!(snap.is_none());
        let (v, snap) = parse_snapped("0.3333333", None).unwrap();
        assert_eq!(v, q(3333333, 10_000_000));
        assert!(snap.is_none());
        assert!(tolerance_from_f64(0.0).is_err());
        assert!(tolerance_from_f64(-1.0).is_err());
    }
}
