//! Exact rational scalars.
//!
//! Every coefficient in the engine is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. The type is
//! `num_rational::BigRational`, which normalizes on construction. The helpers
//! here add parsing and canonical display, plus the few numeric utilities
//! the recurrences need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as an exact rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (q nonzero). Surrounding whitespace is ignored.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Nearest `f64`; exact for small numerators and denominators.
pub fn to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // Huge operands: shift both down to a common scale first.
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Exact conversion of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Greatest common divisor of two integers, always non-negative.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn always_reduced_with_positive_denominator() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(gcd(r.numer(), r.denom()), BigInt::one());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("1/2"), Some(ratio(1, 2)));
        assert_eq!(parse(" -12 "), Some(int(-12)));
        assert_eq!(parse("4/8").map(|r| format(&r)), Some("1/2".to_string()));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(format(&int(7)), "7");
    }

    #[test]
    fn factorial_does_not_overflow() {
        let f25 = factorial(25);
        assert_eq!(f25.numer().to_string(), "15511210043330985984000000");
        assert_eq!(factorial(0), int(1));
    }

    #[test]
    fn pow_handles_zero_base() {
        assert_eq!(pow(&int(0), 0), int(1));
        assert_eq!(pow(&int(0), 3), int(0));
        assert_eq!(pow(&ratio(-1, 2), 3), ratio(-1, 8));
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&ratio(1, 4)), 0.25);
        let tiny = Rational::one() / factorial(200);
        assert!(to_f64(&tiny) >= 0.0);
        assert_eq!(from_f64(0.5), Some(ratio(1, 2)));
    }
}
