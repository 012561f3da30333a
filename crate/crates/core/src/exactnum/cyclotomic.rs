//! Exact arithmetic in Q(zeta_n): residues modulo the n-th cyclotomic
//! polynomial with rational coefficients, the Galois action, embeddings
//! between compatible orders, and one designated complex embedding for
//! numeric gates.

use crate::ratio::{rat_to_f64, rint, Rat};
use num::complex::Complex64;
use num::traits::{One, Zero};
use num::BigInt;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Euler's totient by trial-division factorization.
pub fn phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients (ascending degree) of the n-th cyclotomic polynomial,
/// computed by exact division of x^n - 1 by the lower cyclotomics; cached.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

/// Exact division of integer polynomials, divisor monic; remainder must
/// vanish.
fn divide_monic(num: &[BigInt], div: &[BigInt]) -> Vec<BigInt> {
    assert!(div.last().unwrap().is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - div.len() + 1];
    for k in (0..quot.len()).rev() {
        let lead = rem[k + div.len() - 1].clone();
        quot[k] = lead.clone();
        for (i, c) in div.iter().enumerate() {
            rem[k + i] -= &lead * c;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division must be exact");
    quot
}

/// An element of Q(zeta_n), stored as the canonical residue modulo the n-th
/// cyclotomic polynomial: phi(n) rational coefficients, ascending powers of
/// zeta_n.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    /// Reduce an arbitrary-degree coefficient vector into the field.
    pub fn from_poly(order: u64, poly: Vec<Rat>) -> Cyclotomic {
        let modulus: Vec<Rat> = cyclotomic_polynomial(order)
            .into_iter()
            .map(|c| Rat::from_integer(c))
            .collect();
        let mut coeffs = poly_rem(poly, &modulus);
        coeffs.resize(phi(order) as usize, Rat::zero());
        Cyclotomic { order, coeffs }
    }

    pub fn zero(order: u64) -> Cyclotomic {
        Cyclotomic { order, coeffs: vec![Rat::zero(); phi(order) as usize] }
    }

    pub fn one(order: u64) -> Cyclotomic {
        Cyclotomic::from_rat(order, rint(1))
    }

    pub fn from_rat(order: u64, value: Rat) -> Cyclotomic {
        let mut out = Cyclotomic::zero(order);
        out.coeffs[0] = value;
        out
    }

    /// zeta_n^k (k may be negative).
    pub fn zeta_pow(order: u64, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rat::zero(); e + 1];
        poly[e] = rint(1);
        Cyclotomic::from_poly(order, poly)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element is rational.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same(&self, other: &Cyclotomic) {
        assert_eq!(self.order, other.order, "mixed cyclotomic orders");
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        self.assert_same(other);
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { order: self.order, coeffs }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        self.assert_same(other);
        let mut prod = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic::from_poly(self.order, prod)
    }

    pub fn scale(&self, f: &Rat) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    /// Field inverse via the extended Euclidean algorithm against the
    /// (irreducible) cyclotomic modulus. Panics on zero.
    pub fn inv(&self) -> Cyclotomic {
        assert!(!self.is_zero(), "inverse of zero");
        let modulus: Vec<Rat> = cyclotomic_polynomial(self.order)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        // Invariants: r0 = u0 * self (mod modulus), r1 = u1 * self.
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut u0 = vec![];
        let mut u1 = vec![rint(1)];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let u2 = poly_sub(&u0, &poly_mul(&q, &u1));
            r0 = r1;
            r1 = rem;
            u0 = u1;
            u1 = u2;
        }
        // r0 is now a nonzero constant gcd; scale to make it 1.
        assert_eq!(r0.len(), 1, "cyclotomic modulus is irreducible");
        let scale = rint(1) / &r0[0];
        let inv = u0.iter().map(|c| c * &scale).collect();
        let out = Cyclotomic::from_poly(self.order, inv);
        debug_assert!(out.mul(self) == Cyclotomic::one(self.order));
        out
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, k: i64) -> Cyclotomic {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Cyclotomic::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// The automorphism zeta -> zeta^a; requires gcd(a, n) = 1.
    pub fn galois(&self, a: u64) -> Cyclotomic {
        assert_eq!(num::integer::gcd(a, self.order), 1, "a must be a unit mod n");
        let mut poly = vec![Rat::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((i as u64 * a) % self.order) as usize;
                poly[e] += c;
            }
        }
        Cyclotomic::from_poly(self.order, poly)
    }

    /// Reinterpret in Q(zeta_m) for n | m, by zeta_n -> zeta_m^(m/n).
    pub fn embed_into(&self, m: u64) -> Cyclotomic {
        assert_eq!(m % self.order, 0, "target order must be a multiple");
        let step = (m / self.order) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Cyclotomic::from_poly(m, poly)
    }

    /// The complex embedding iota_a: zeta_n -> exp(2 pi i a / n).
    pub fn complex_embedding(&self, a: u64) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * (a as f64) * (i as f64) / n;
            acc += Complex64::from_polar(rat_to_f64(c), angle);
        }
        acc
    }
}

/// Lift a pair into the compositum Q(zeta_lcm).
pub fn lift_pair(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
    let m = num::integer::lcm(a.order, b.order);
    (a.embed_into(m), b.embed_into(m))
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match i {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.order),
                _ => format!("{c}*z{}^{i}", self.order),
            };
            terms.push(body);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Quotient and remainder of rational polynomials, divisor nonzero.
fn poly_divmod(num: &[Rat], div: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let div = trim(div.to_vec());
    assert!(!div.is_empty());
    let mut rem = trim(num.to_vec());
    if rem.len() < div.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - div.len() + 1];
    let lead_inv = rint(1) / div.last().unwrap();
    for k in (0..quot.len()).rev() {
        if rem.len() < k + div.len() {
            continue;
        }
        let factor = &rem[k + div.len() - 1] * &lead_inv;
        if factor.is_zero() {
            continue;
        }
        quot[k] = factor.clone();
        for (i, c) in div.iter().enumerate() {
            rem[k + i] -= &factor * c;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Remainder modulo a monic polynomial.
fn poly_rem(poly: Vec<Rat>, modulus: &[Rat]) -> Vec<Rat> {
    poly_divmod(&poly, modulus).1
}
