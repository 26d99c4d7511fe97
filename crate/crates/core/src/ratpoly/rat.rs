//! Arbitrary-precision rationals and the few scalar helpers the kernel needs.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Rat = BigRational;

/// Fractional bits kept by approximate (non-exact) quantities.
pub const APPROX_BITS: u64 = 320;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`. Panics on `d == 0`; meant for literals.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rat: zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn pow2(k: i64) -> Rat {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: BigInt = if ip_digits.is_empty() {
            BigInt::zero()
        } else {
            ip_digits.parse().map_err(|_| bad())?
        };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Rat::new(whole * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// `"p/q"` or `"p"`.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Falls back for magnitudes outside the f64 range.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Nearest multiple of `2^-bits`.
pub fn round_to_bits(x: &Rat, bits: u64) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = x * Rat::from_integer(scale.clone());
    Rat::new(scaled.round().to_integer(), scale)
}

/// Square root of a nonnegative rational, exact when possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sqrt {
    pub value: Rat,
    pub exact: bool,
}

pub fn sqrt_rat(x: &Rat) -> Sqrt {
    assert!(!x.is_negative(), "sqrt_rat of a negative number");
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        return Sqrt {
            value: Rat::new(rn, rd),
            exact: true,
        };
    }
    // sqrt(n/d) = sqrt(n d) / d, scaled by 2^APPROX_BITS.
    let shift = 2 * APPROX_BITS;
    let root = ((n * d) << shift).sqrt();
    Sqrt {
        value: Rat::new(root, d << APPROX_BITS),
        exact: false,
    }
}

/// The rational with smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "simplest_between: empty interval");
    if !lo.is_positive() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rat::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

pub fn sign(x: &Rat) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Rational with `|value| < 10^-exp`, for tolerance comparisons.
pub fn tenth_power(exp: u32) -> Rat {
    Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), exp as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-3, 1)), int(-3));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), int(0));
        let x = rat(355, 113);
        assert_eq!(simplest_between(&(&x - pow2(-40)), &(&x + pow2(-40))), x);
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(parse_rat("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rat("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rat("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("1.").is_err());
    }

    #[test]
    fn format_roundtrip() {
        for s in ["0", "-3", "22/7", "-1/1000000000000000000000"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
    }

    #[test]
    fn sqrt_exact_and_approximate() {
        assert_eq!(sqrt_rat(&rat(9, 4)), Sqrt { value: rat(3, 2), exact: true });
        let r2 = sqrt_rat(&int(2));
        assert!(!r2.exact);
        let err = &r2.value * &r2.value - int(2);
        assert!(err.abs() < tenth_power(90));
    }

    #[test]
    fn rounding_to_bits() {
        assert_eq!(round_to_bits(&rat(1, 3), 2), rat(1, 4));
        assert_eq!(round_to_bits(&rat(3, 8), 3), rat(3, 8));
    }
}
