//! Exact rational scalars and their canonical text form.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// n/d as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// n as an exact rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact integer value, if the rational is an integer that fits in i64.
pub fn as_i64(r: &Rat) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Canonical "numerator/denominator" form: reduced, denominator positive,
/// sign on the numerator, denominator always printed ("-2/1").
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Inverse of [`fmt_rat`]; also accepts a bare integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for magnitudes outside f64 range of the parts.
        let f = Rat::new(r.numer().clone(), BigInt::one()).to_f64().unwrap_or(f64::MAX);
        let g = Rat::new(r.denom().clone(), BigInt::one()).to_f64().unwrap_or(f64::MAX);
        f / g
    })
}

/// True if r is a non-negative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}
