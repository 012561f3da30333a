//! Capped-precision scalars of Q_p: a valuation plus a unit residue known
//! modulo p^rel. Multiplication is exact on valuations; addition tracks the
//! surviving digits pessimistically, and total cancellation degrades a value
//! to an "indistinguishable from zero at this precision" form rather than
//! inventing a valuation.

use crate::error::{Error, Result};
use crate::ratio::Rat;
use num::traits::{One, Zero};
use num::{BigInt, BigUint, Integer};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Form {
    ExactZero,
    /// All digits known at this precision vanished: valuation >= min_val.
    UnknownZero { min_val: i64 },
    /// p^val * unit, with unit invertible and reduced modulo p^rel.
    NonZero { val: i64, unit: BigUint, rel: u32 },
}

/// An element of Q_p carried at finite precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicScalar {
    p: u64,
    form: Form,
}

/// Exact p-adic valuation of a nonzero integer.
fn val_of_int(p: u64, x: &BigInt) -> (i64, BigInt) {
    assert!(!x.is_zero());
    let p_big = BigInt::from(p);
    let mut v = 0i64;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(&p_big);
        if r.is_zero() {
            v += 1;
            rest = q;
        } else {
            return (v, rest);
        }
    }
}

/// Exact valuation of a rational; None for zero.
pub fn rat_valuation(p: u64, x: &Rat) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let (vn, _) = val_of_int(p, x.numer());
    let (vd, _) = val_of_int(p, x.denom());
    Some(vn - vd)
}

/// Inverse of u modulo p^k (u coprime to p).
fn mod_inverse(u: &BigUint, modulus: &BigUint) -> BigUint {
    let u = BigInt::from(u.clone());
    let m = BigInt::from(modulus.clone());
    let (mut r0, mut r1) = (m.clone(), u);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    assert!(r0.is_one(), "not invertible");
    t0.mod_floor(&m).to_biguint().unwrap()
}

/// The reduced unit of a nonzero rational modulo p^k.
pub fn rat_unit_mod(p: u64, x: &Rat, k: u32) -> BigUint {
    assert!(!x.is_zero());
    let modulus = BigUint::from(p).pow(k);
    let (_, n_unit) = val_of_int(p, x.numer());
    let (_, d_unit) = val_of_int(p, x.denom());
    let n_res = n_unit.mod_floor(&BigInt::from(modulus.clone())).to_biguint().unwrap();
    let d_res = d_unit.mod_floor(&BigInt::from(modulus.clone())).to_biguint().unwrap();
    (n_res * mod_inverse(&d_res, &modulus)) % &modulus
}

impl PAdicScalar {
    pub fn exact_zero(p: u64) -> PAdicScalar {
        PAdicScalar { p, form: Form::ExactZero }
    }

    /// An exact rational input carried at `precision` relative digits.
    pub fn from_rat(p: u64, x: &Rat, precision: u32) -> PAdicScalar {
        assert!(precision >= 1);
        match rat_valuation(p, x) {
            None => PAdicScalar::exact_zero(p),
            Some(val) => PAdicScalar {
                p,
                form: Form::NonZero { val, unit: rat_unit_mod(p, x, precision), rel: precision },
            },
        }
    }

    pub fn from_i64(p: u64, x: i64, precision: u32) -> PAdicScalar {
        PAdicScalar::from_rat(p, &Rat::from_integer(BigInt::from(x)), precision)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        self.form == Form::ExactZero
    }

    /// True when the value cannot be told apart from zero.
    pub fn looks_zero(&self) -> bool {
        !matches!(self.form, Form::NonZero { .. })
    }

    /// The valuation of a provably nonzero value.
    pub fn valuation(&self) -> Result<i64> {
        match &self.form {
            Form::ExactZero => Err(Error::ZeroInput),
            Form::UnknownZero { min_val } => Err(Error::InsufficientPrecision(format!(
                "value is 0 up to O(p^{min_val})"
            ))),
            Form::NonZero { val, .. } => Ok(*val),
        }
    }

    /// Relative precision in digits, when a unit is present.
    pub fn relative_precision(&self) -> Option<u32> {
        match &self.form {
            Form::NonZero { rel, .. } => Some(*rel),
            _ => None,
        }
    }

    /// The unit residue modulo p^k, requiring k known digits.
    pub fn unit_mod(&self, k: u32) -> Result<BigUint> {
        match &self.form {
            Form::ExactZero => Err(Error::ZeroInput),
            Form::UnknownZero { min_val } => Err(Error::InsufficientPrecision(format!(
                "value is 0 up to O(p^{min_val})"
            ))),
            Form::NonZero { unit, rel, .. } => {
                if k > *rel {
                    return Err(Error::InsufficientPrecision(format!(
                        "need {k} digits, have {rel}"
                    )));
                }
                Ok(unit % BigUint::from(self.p).pow(k))
            }
        }
    }

    fn assert_same_prime(&self, other: &PAdicScalar) {
        assert_eq!(self.p, other.p, "mixed primes");
    }

    pub fn mul(&self, other: &PAdicScalar) -> PAdicScalar {
        self.assert_same_prime(other);
        let form = match (&self.form, &other.form) {
            (Form::ExactZero, _) | (_, Form::ExactZero) => Form::ExactZero,
            (Form::UnknownZero { min_val: a }, Form::UnknownZero { min_val: b }) => {
                Form::UnknownZero { min_val: a + b }
            }
            (Form::UnknownZero { min_val }, Form::NonZero { val, .. })
            | (Form::NonZero { val, .. }, Form::UnknownZero { min_val }) => {
                Form::UnknownZero { min_val: min_val + val }
            }
            (
                Form::NonZero { val: v1, unit: u1, rel: r1 },
                Form::NonZero { val: v2, unit: u2, rel: r2 },
            ) => {
                let rel = (*r1).min(*r2);
                let modulus = BigUint::from(self.p).pow(rel);
                Form::NonZero { val: v1 + v2, unit: (u1 * u2) % modulus, rel }
            }
        };
        PAdicScalar { p: self.p, form }
    }

    /// Inverse of a provably nonzero value.
    pub fn inv(&self) -> Result<PAdicScalar> {
        match &self.form {
            Form::ExactZero => Err(Error::ZeroInput),
            Form::UnknownZero { min_val } => Err(Error::InsufficientPrecision(format!(
                "cannot invert a value that is 0 up to O(p^{min_val})"
            ))),
            Form::NonZero { val, unit, rel } => {
                let modulus = BigUint::from(self.p).pow(*rel);
                Ok(PAdicScalar {
                    p: self.p,
                    form: Form::NonZero {
                        val: -val,
                        unit: mod_inverse(unit, &modulus),
                        rel: *rel,
                    },
                })
            }
        }
    }

    pub fn neg(&self) -> PAdicScalar {
        let form = match &self.form {
            Form::ExactZero => Form::ExactZero,
            Form::UnknownZero { min_val } => Form::UnknownZero { min_val: *min_val },
            Form::NonZero { val, unit, rel } => {
                let modulus = BigUint::from(self.p).pow(*rel);
                Form::NonZero { val: *val, unit: &modulus - unit, rel: *rel }
            }
        };
        PAdicScalar { p: self.p, form }
    }

    pub fn add(&self, other: &PAdicScalar) -> PAdicScalar {
        self.assert_same_prime(other);
        let form = match (&self.form, &other.form) {
            (Form::ExactZero, f) | (f, Form::ExactZero) => f.clone(),
            (Form::UnknownZero { min_val: a }, Form::UnknownZero { min_val: b }) => {
                Form::UnknownZero { min_val: (*a).min(*b) }
            }
            (Form::UnknownZero { min_val }, Form::NonZero { val, unit, rel })
            | (Form::NonZero { val, unit, rel }, Form::UnknownZero { min_val }) => {
                // Digits of the sum are known only below the zero's bound.
                let abs = (val + *rel as i64).min(*min_val);
                if *val < *min_val {
                    let new_rel = (abs - val) as u32;
                    Form::NonZero {
                        val: *val,
                        unit: unit % BigUint::from(self.p).pow(new_rel),
                        rel: new_rel,
                    }
                } else {
                    Form::UnknownZero { min_val: abs }
                }
            }
            (
                Form::NonZero { val: v1, unit: u1, rel: r1 },
                Form::NonZero { val: v2, unit: u2, rel: r2 },
            ) => {
                let base = (*v1).min(*v2);
                let abs = (v1 + *r1 as i64).min(v2 + *r2 as i64);
                let window = (abs - base) as u32;
                let modulus = BigUint::from(self.p).pow(window);
                let lift = |val: i64, unit: &BigUint| -> BigUint {
                    (unit * BigUint::from(self.p).pow((val - base) as u32)) % &modulus
                };
                let sum = (lift(*v1, u1) + lift(*v2, u2)) % &modulus;
                if sum.is_zero() {
                    Form::UnknownZero { min_val: abs }
                } else {
                    let (shift, reduced) = val_of_int(self.p, &BigInt::from(sum));
                    Form::NonZero {
                        val: base + shift,
                        unit: reduced.to_biguint().unwrap(),
                        rel: window - shift as u32,
                    }
                }
            }
        };
        PAdicScalar { p: self.p, form }
    }

    pub fn sub(&self, other: &PAdicScalar) -> PAdicScalar {
        self.add(&other.neg())
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            Form::ExactZero => write!(f, "0"),
            Form::UnknownZero { min_val } => write!(f, "O({}^{})", self.p, min_val),
            Form::NonZero { val, unit, rel } => {
                write!(f, "{}^{} * ({} + O({}^{}))", self.p, val, unit, self.p, rel)
            }
        }
    }
}

/// Convenience: the valuation of an exact rational as i64, panicking on 0.
pub fn exact_valuation(p: u64, x: &Rat) -> i64 {
    rat_valuation(p, x).expect("nonzero rational")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn valuations_of_rationals() {
        assert_eq!(rat_valuation(5, &rat(7, 50)), Some(-2));
        assert_eq!(rat_valuation(2, &rat(48, 3)), Some(4));
        assert_eq!(rat_valuation(3, &rat(0, 1)), None);
    }

    #[test]
    fn unit_parts_of_rationals() {
        // 7/50 = 5^-2 * (7/2); 7 * inv(2) mod 25 = 7 * 13 = 91 = 16 mod 25.
        assert_eq!(rat_unit_mod(5, &rat(7, 50), 2), BigUint::from(16u32));
        assert_eq!(rat_unit_mod(2, &rat(48, 3), 3), BigUint::from(1u32));
    }

    #[test]
    fn multiplication_adds_valuations() {
        let x = PAdicScalar::from_rat(3, &rat(18, 5), 20);
        let y = PAdicScalar::from_rat(3, &rat(5, 27), 20);
        let xy = x.mul(&y);
        assert_eq!(xy.valuation().unwrap(), 2 + (-3));
        // 18/5 * 5/27 = 2/3 exactly: unit 2.
        assert_eq!(xy.unit_mod(1).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let x = PAdicScalar::from_rat(7, &rat(45, 14), 12);
        let prod = x.mul(&x.inv().unwrap());
        assert_eq!(prod.valuation().unwrap(), 0);
        assert_eq!(prod.unit_mod(12).unwrap(), BigUint::from(1u32));
        assert_eq!(prod.relative_precision(), Some(12));
    }

    #[test]
    fn cancellation_is_detected_not_invented() {
        let one = PAdicScalar::from_i64(5, 1, 8);
        let x = PAdicScalar::from_i64(5, 26, 8); // 1 + 5^2
        let diff = x.sub(&one);
        assert_eq!(diff.valuation().unwrap(), 2);
        // Relative precision shrinks by the cancelled digits.
        assert_eq!(diff.relative_precision(), Some(6));

        let gone = x.sub(&x);
        assert!(gone.looks_zero());
        assert!(!gone.is_exact_zero());
        assert!(matches!(gone.valuation(), Err(Error::InsufficientPrecision(_))));

        let z = PAdicScalar::exact_zero(5);
        assert_eq!(x.add(&z), x);
    }

    #[test]
    fn precision_windows_shrink_pessimistically() {
        let x = PAdicScalar::from_i64(2, 9, 10);
        let y = PAdicScalar::from_i64(2, 3, 4);
        // Products keep the smaller relative precision.
        assert_eq!(x.mul(&y).relative_precision(), Some(4));
        // Sums keep the smaller absolute window; digits lost to
        // cancellation inside it are gone: 9 + 3 = 2^2 * 3.
        assert_eq!(x.add(&y).relative_precision(), Some(2));
        assert_eq!(x.add(&y).valuation().unwrap(), 2);
        let w = PAdicScalar::from_i64(2, 5, 4);
        // 9 + 5 = 2 * 7 drops one digit of the 4-digit window.
        assert_eq!(x.add(&w).relative_precision(), Some(3));
        assert_eq!(x.add(&w).valuation().unwrap(), 1);
    }

    #[test]
    fn unit_lookup_requires_enough_digits() {
        let x = PAdicScalar::from_i64(3, 7, 2);
        assert!(x.unit_mod(2).is_ok());
        assert!(matches!(x.unit_mod(3), Err(Error::InsufficientPrecision(_))));
        assert!(matches!(
            PAdicScalar::exact_zero(3).unit_mod(1),
            Err(Error::ZeroInput)
        ));
    }
}
