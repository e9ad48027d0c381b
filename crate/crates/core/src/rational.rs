//! Exact rational numbers and the extended parameter type `[0, ∞]`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational in canonical form (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

/// `n / d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn from_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parameter(alloc::format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parameter(alloc::format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let mut digits = String::from(whole_digits);
        digits.push_str(frac);
        let mantissa = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

/// A value in `[0, ∞]`, used for symbol weights and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    /// Parses a nonnegative rational or `inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" || t.eq_ignore_ascii_case("infinity") {
            return Ok(ExtRational::Infinite);
        }
        let r = parse_rational(t)?;
        if r.is_negative() {
            return Err(Error::Parameter(alloc::format!("negative value {s:?}")));
        }
        Ok(ExtRational::Finite(r))
    }

    /// `x ↦ 1/x` with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        match self {
            ExtRational::Infinite => ExtRational::Finite(Rational::zero()),
            ExtRational::Finite(r) if r.is_zero() => ExtRational::Infinite,
            ExtRational::Finite(r) => ExtRational::Finite(r.recip()),
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

/// Canonical `"p/q"` rendering (integers print without a denominator).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Correctly scaled conversion of `num / den` to `f64`.
///
/// Works for quotients far outside the `f64` range of the operands
/// themselves, which is the normal case for rows of the Eulerian triangle.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let negative = num.is_negative() != den.is_negative();
    let (num, den) = (num.abs(), den.abs());
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let quotient = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let mantissa = quotient.to_f64().unwrap_or(f64::INFINITY);
    let exp = (-shift).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    let value = libm::ldexp(mantissa, exp);
    if negative {
        -value
    } else {
        value
    }
}

/// [`ratio_to_f64`] for a [`Rational`].
pub fn to_f64(r: &Rational) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}

/// Exact sum by pairwise (binary-splitting) reduction, which keeps the
/// intermediate denominators balanced for long harmonic-type sums.
pub fn sum_exact<I: IntoIterator<Item = Rational>>(terms: I) -> Rational {
    let mut level: Vec<Rational> = terms.into_iter().collect();
    if level.is_empty() {
        return Rational::zero();
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(x) = it.next() {
            match it.next() {
                Some(y) => next.push(x + y),
                None => next.push(x),
            }
        }
        level = next;
    }
    level.pop().unwrap_or_else(Rational::zero)
}

/// `x^k` for a rational base.
pub fn pow(x: &Rational, k: usize) -> Rational {
    num_traits::pow(x.clone(), k)
}

/// `x(x+1)⋯(x+n−1)`, with the empty product equal to 1.
pub fn rising_factorial(x: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/7").unwrap(), rat(3, 7));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn extended_values() {
        assert_eq!(ExtRational::parse("inf").unwrap(), ExtRational::Infinite);
        assert_eq!(ExtRational::parse("2").unwrap().recip(), ExtRational::Finite(rat(1, 2)));
        assert_eq!(ExtRational::parse("0").unwrap().recip(), ExtRational::Infinite);
        assert_eq!(ExtRational::Infinite.recip(), ExtRational::Finite(int(0)));
        assert!(ExtRational::parse("-1").is_err());
    }

    #[test]
    fn float_conversion_of_huge_ratios() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = ratio_to_f64(&(&big * 3), &(&big * 7));
        assert!((r - 3.0 / 7.0).abs() < 1e-16);
        let tiny = ratio_to_f64(&BigInt::from(1), &big);
        assert_eq!(tiny, 0.0);
        assert!((ratio_to_f64(&BigInt::from(-1), &BigInt::from(3)) + 1.0 / 3.0).abs() < 1e-17);
    }

    #[test]
    fn rising_factorial_values() {
        // 2^{rise n} = (n+1)!
        assert_eq!(rising_factorial(&int(2), 5), int(720));
        assert_eq!(rising_factorial(&rat(3, 2), 2) * int(4), int(15));
        assert_eq!(rising_factorial(&rat(5, 3), 0), int(1));
        assert_eq!(rising_factorial(&rat(5, 3), 1), rat(5, 3));
    }

    #[test]
    fn pairwise_sum_matches_sequential() {
        let terms: Vec<Rational> = (1..200).map(|i| rat(1, i)).collect();
        let seq = terms.iter().fold(Rational::zero(), |acc, t| acc + t);
        assert_eq!(sum_exact(terms), seq);
    }
}
