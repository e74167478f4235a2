//! Helpers around exact rationals.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n`, `n/d` or a decimal-free signed fraction.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn big_to_f64_scaled(n: &BigInt) -> (f64, i64) {
    // n = mantissa * 2^shift with mantissa representable
    let bits = n.bits() as i64;
    if bits <= 900 {
        (n.to_f64().unwrap_or(f64::NAN), 0)
    } else {
        let shift = bits - 64;
        let m: BigInt = n >> (shift as usize);
        (m.to_f64().unwrap_or(f64::NAN), shift)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    let (n, ns) = big_to_f64_scaled(r.numer());
    let (d, ds) = big_to_f64_scaled(r.denom());
    let e = (ns - ds).clamp(-2000, 2000) as i32;
    n / d * 2f64.powi(e)
}

/// Natural logarithm of a positive big integer.
pub fn ln_bigint(n: &BigInt) -> f64 {
    debug_assert!(n.sign() == Sign::Plus);
    let (m, shift) = big_to_f64_scaled(n);
    m.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(r: &Rational) -> f64 {
    debug_assert!(r.is_positive());
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

pub fn in_unit_interval(w: &Rational) -> bool {
    w.is_positive() && *w <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn float_conversion_of_huge_values() {
        let big = Rational::new(BigInt::from(3) << 2000usize, BigInt::from(1) << 2000usize);
        assert!((to_f64(&big) - 3.0).abs() < 1e-12);
        assert!((ln_rational(&big) - 3f64.ln()).abs() < 1e-12);
    }
}
