//! Exact 2x2 p-adic matrices, the Iwasawa decomposition g = (upper
//! triangular) * (unit-determinant integral), and the coset basis of the
//! level-m induced space for GL(2): representatives of (B cap K)K(m)\K,
//! which biject with the projective line over O/P^m.

use crate::error::{Error, Result};
use crate::exactnum::padic::PAdicScalar;
use crate::ratio::Rat;
use num::traits::ToPrimitive;

/// A 2x2 matrix of p-adic scalars, row-major.
#[derive(Clone, Debug)]
pub struct PMat2 {
    pub e: [[PAdicScalar; 2]; 2],
}

impl PMat2 {
    pub fn new(e: [[PAdicScalar; 2]; 2]) -> PMat2 {
        let p = e[0][0].prime();
        assert!(e.iter().flatten().all(|x| x.prime() == p), "mixed primes");
        PMat2 { e }
    }

    pub fn prime(&self) -> u64 {
        self.e[0][0].prime()
    }

    pub fn from_ints(p: u64, a: [[i64; 2]; 2], precision: u32) -> PMat2 {
        PMat2::new([
            [
                PAdicScalar::from_i64(p, a[0][0], precision),
                PAdicScalar::from_i64(p, a[0][1], precision),
            ],
            [
                PAdicScalar::from_i64(p, a[1][0], precision),
                PAdicScalar::from_i64(p, a[1][1], precision),
            ],
        ])
    }

    pub fn from_rats(p: u64, a: &[[Rat; 2]; 2], precision: u32) -> PMat2 {
        PMat2::new([
            [
                PAdicScalar::from_rat(p, &a[0][0], precision),
                PAdicScalar::from_rat(p, &a[0][1], precision),
            ],
            [
                PAdicScalar::from_rat(p, &a[1][0], precision),
                PAdicScalar::from_rat(p, &a[1][1], precision),
            ],
        ])
    }

    pub fn identity(p: u64, precision: u32) -> PMat2 {
        PMat2::from_ints(p, [[1, 0], [0, 1]], precision)
    }

    /// The Weyl representative w = [[0, -1], [1, 0]].
    pub fn weyl(p: u64, precision: u32) -> PMat2 {
        PMat2::from_ints(p, [[0, -1], [1, 0]], precision)
    }

    /// Upper unipotent u(x) = [[1, x], [0, 1]].
    pub fn upper_unipotent(p: u64, x: &Rat, precision: u32) -> PMat2 {
        let one = PAdicScalar::from_i64(p, 1, precision);
        let zero = PAdicScalar::exact_zero(p);
        PMat2::new([
            [one.clone(), PAdicScalar::from_rat(p, x, precision)],
            [zero, one],
        ])
    }

    /// Lower unipotent [[1, 0], [t, 1]].
    pub fn lower_unipotent(t: PAdicScalar, precision: u32) -> PMat2 {
        let p = t.prime();
        let one = PAdicScalar::from_i64(p, 1, precision);
        let zero = PAdicScalar::exact_zero(p);
        PMat2::new([[one.clone(), zero], [t, one]])
    }

    pub fn mul(&self, other: &PMat2) -> PMat2 {
        let mut rows = Vec::with_capacity(2);
        for i in 0..2 {
            let mut row = Vec::with_capacity(2);
            for j in 0..2 {
                row.push(
                    self.e[i][0]
                        .mul(&other.e[0][j])
                        .add(&self.e[i][1].mul(&other.e[1][j])),
                );
            }
            rows.push(row);
        }
        let mut it = rows.into_iter();
        let mut r0 = it.next().unwrap().into_iter();
        let mut r1 = it.next().unwrap().into_iter();
        PMat2 {
            e: [
                [r0.next().unwrap(), r0.next().unwrap()],
                [r1.next().unwrap(), r1.next().unwrap()],
            ],
        }
    }

    pub fn det(&self) -> PAdicScalar {
        self.e[0][0]
            .mul(&self.e[1][1])
            .sub(&self.e[0][1].mul(&self.e[1][0]))
    }

    /// Entrywise indistinguishability at the available precision.
    pub fn agrees_with(&self, other: &PMat2) -> bool {
        (0..2).all(|i| {
            (0..2).all(|j| {
                let d = self.e[i][j].sub(&other.e[i][j]);
                d.is_exact_zero() || d.looks_zero()
            })
        })
    }

    /// All entries integral (valuation >= 0 or zero-like).
    pub fn is_integral(&self) -> bool {
        self.e.iter().flatten().all(|x| {
            x.is_exact_zero() || x.looks_zero() || x.valuation().map_or(false, |v| v >= 0)
        })
    }

    /// Integral with unit determinant: a member of K = GL2(O).
    pub fn is_in_k(&self) -> bool {
        self.is_integral() && self.det().valuation().map_or(false, |v| v == 0)
    }
}

/// Valuation with None meaning "indistinguishable from zero here".
fn loose_valuation(x: &PAdicScalar) -> Option<i64> {
    if x.is_exact_zero() || x.looks_zero() {
        None
    } else {
        Some(x.valuation().expect("nonzero scalar has a valuation"))
    }
}

/// Iwasawa decomposition g = b * kappa with b upper triangular and kappa in
/// K. If val(g21) >= val(g22) the (2,1) entry is cleared by a single lower
/// unipotent column operation inside K; otherwise the columns are first
/// swapped by the Weyl element. The factorization is re-checked by
/// multiplication before returning.
pub fn iwasawa(g: &PMat2) -> Result<(PMat2, PMat2)> {
    let p = g.prime();
    let precision = g
        .e
        .iter()
        .flatten()
        .filter_map(|x| x.relative_precision())
        .min()
        .unwrap_or(64);
    let v21 = loose_valuation(&g.e[1][0]);
    let v22 = loose_valuation(&g.e[1][1]);

    let (staged, kappa_right) = match (v21, v22) {
        (None, None) => {
            return Err(Error::Precondition(
                "iwasawa: bottom row is zero, the matrix is singular".into(),
            ))
        }
        // Clear directly when the (2,2) entry has the smaller valuation.
        (None, Some(_)) => (g.clone(), None),
        (Some(a), Some(b)) if a >= b => (g.clone(), None),
        // Otherwise route through the Weyl element first.
        _ => {
            let w = PMat2::weyl(p, precision);
            // w^-1 = [[0, 1], [-1, 0]].
            let w_inv = PMat2::from_ints(p, [[0, 1], [-1, 0]], precision);
            (g.mul(&w), Some(w_inv))
        }
    };

    // staged has val(s21) >= val(s22); clear s21 with a lower unipotent.
    let s21 = &staged.e[1][0];
    let s22 = &staged.e[1][1];
    let t = if s21.is_exact_zero() || s21.looks_zero() {
        PAdicScalar::exact_zero(p)
    } else {
        s21.mul(&s22.inv()?).neg()
    };
    let clear = PMat2::lower_unipotent(t.clone(), precision);
    let mut b = staged.mul(&clear);
    // The (2,1) entry vanishes identically by the choice of t; the window
    // arithmetic only sees "zero to available precision", so pin it.
    assert!(
        b.e[1][0].is_exact_zero() || b.e[1][0].looks_zero(),
        "column operation failed to clear the corner"
    );
    b.e[1][0] = PAdicScalar::exact_zero(p);

    let undo = PMat2::lower_unipotent(t.neg(), precision);
    let kappa = match kappa_right {
        None => undo,
        Some(w_inv) => undo.mul(&w_inv),
    };
    if !kappa.is_in_k() {
        return Err(Error::InsufficientPrecision(
            "iwasawa: cannot certify the compact factor".into(),
        ));
    }
    assert!(b.mul(&kappa).agrees_with(g), "iwasawa re-multiplication failed");
    Ok((b, kappa))
}

/// Shape of a coset representative: Lower(a) = [[1,0],[a,1]] standing for
/// the projective point [a : 1] (a in P), Flipped(c) = [[0,-1],[1,c]] for
/// the point [1 : c].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepShape {
    Lower { a: u64 },
    Flipped { c: u64 },
}

/// Representatives of (B cap K)K(m)\K, i.e. of P^1(O/P^m); the coset of a
/// matrix in K is determined by its bottom row up to unit scaling.
#[derive(Clone, Debug)]
pub struct CosetBasis {
    p: u64,
    m: u32,
    shapes: Vec<RepShape>,
}

/// Maximum supported level: the sizes stay at desk scale.
pub const MAX_LEVEL: u32 = 3;

pub fn coset_basis(p: u64, m: u32) -> Result<CosetBasis> {
    if m > MAX_LEVEL {
        return Err(Error::Precondition(format!(
            "level {m} exceeds the supported range 0..={MAX_LEVEL}"
        )));
    }
    let mut shapes = Vec::new();
    if m == 0 {
        shapes.push(RepShape::Lower { a: 0 });
    } else {
        let pm = p.pow(m);
        for a in (0..pm).step_by(p as usize) {
            shapes.push(RepShape::Lower { a });
        }
        for c in 0..pm {
            shapes.push(RepShape::Flipped { c });
        }
    }
    Ok(CosetBasis { p, m, shapes })
}

impl CosetBasis {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> usize {
        self.shapes.len()
    }

    pub fn shapes(&self) -> &[RepShape] {
        &self.shapes
    }

    pub fn rep_matrix(&self, idx: usize, precision: u32) -> PMat2 {
        match self.shapes[idx] {
            RepShape::Lower { a } => {
                PMat2::from_ints(self.p, [[1, 0], [a as i64, 1]], precision)
            }
            RepShape::Flipped { c } => {
                PMat2::from_ints(self.p, [[0, -1], [1, c as i64]], precision)
            }
        }
    }

    pub fn rep_inverse(&self, idx: usize, precision: u32) -> PMat2 {
        match self.shapes[idx] {
            RepShape::Lower { a } => {
                PMat2::from_ints(self.p, [[1, 0], [-(a as i64), 1]], precision)
            }
            // [[0,-1],[1,c]]^-1 = [[c,1],[-1,0]].
            RepShape::Flipped { c } => {
                PMat2::from_ints(self.p, [[c as i64, 1], [-1, 0]], precision)
            }
        }
    }

    /// The integer in [0, p^m) congruent to t (t integral).
    fn residue(&self, t: &PAdicScalar) -> Result<u64> {
        if self.m == 0 {
            return Ok(0);
        }
        if t.is_exact_zero() || t.looks_zero() {
            return Ok(0);
        }
        let v = t.valuation()?;
        assert!(v >= 0, "residue of a non-integral scalar");
        if v >= self.m as i64 {
            return Ok(0);
        }
        let digits = self.m - v as u32;
        let unit = t.unit_mod(digits)?.to_u64().expect("small residue");
        Ok(unit * self.p.pow(v as u32) % self.p.pow(self.m))
    }

    /// Index of the coset containing a K-matrix with the given bottom row.
    pub fn locate(&self, x: &PAdicScalar, y: &PAdicScalar) -> Result<usize> {
        if self.m == 0 {
            return Ok(0);
        }
        let vx = loose_valuation(x);
        match vx {
            Some(0) => {
                // Point [1 : y/x].
                let c = self.residue(&y.mul(&x.inv()?))?;
                Ok(self.p.pow(self.m - 1) as usize + c as usize)
            }
            _ => {
                // x in P, so y must be a unit: point [x/y : 1].
                if loose_valuation(y) != Some(0) {
                    return Err(Error::Precondition(
                        "locate: bottom row is not unimodular".into(),
                    ));
                }
                let a = self.residue(&x.mul(&y.inv()?))?;
                assert!(a % self.p == 0);
                Ok((a / self.p) as usize)
            }
        }
    }

    /// Factor kappa in K as (upper triangular b in K) * rep * (element of
    /// K(m)); returns the rep index and the diagonal of b. Level-m induced
    /// vectors are right K(m)-invariant, so this is exactly the data needed
    /// to evaluate them anywhere on K.
    pub fn reduce_in_k(
        &self,
        kappa: &PMat2,
    ) -> Result<(usize, PAdicScalar, PAdicScalar)> {
        let precision = kappa
            .e
            .iter()
            .flatten()
            .filter_map(|x| x.relative_precision())
            .min()
            .unwrap_or(64);
        if self.m == 0 {
            let one = PAdicScalar::from_i64(self.p, 1, precision);
            return Ok((0, one.clone(), one));
        }
        let idx = self.locate(&kappa.e[1][0], &kappa.e[1][1])?;
        let m_mat = kappa.mul(&self.rep_inverse(idx, precision));
        // m_mat lies in (B cap K)K(m): its corner is divisible by p^m and
        // its (2,2) entry is a unit. Clear the corner inside K(m).
        let t = if m_mat.e[1][0].is_exact_zero() || m_mat.e[1][0].looks_zero() {
            PAdicScalar::exact_zero(self.p)
        } else {
            m_mat.e[1][0].mul(&m_mat.e[1][1].inv()?).neg()
        };
        if let Some(v) = loose_valuation(&t) {
            assert!(
                v >= self.m as i64,
                "coset mismatch: correction is not in the congruence subgroup"
            );
        }
        let b11 = m_mat.e[0][0].add(&m_mat.e[0][1].mul(&t));
        let b22 = m_mat.e[1][1].clone();
        for d in [&b11, &b22] {
            let v = d.valuation()?;
            assert_eq!(v, 0, "upper factor must have unit diagonal");
        }
        Ok((idx, b11, b22))
    }

    /// Full evaluation data for g with entries in Z[1/p]: Iwasawa plus the
    /// in-K reduction, returning (rep index, chi1-argument, chi2-argument).
    pub fn factor_through(
        &self,
        g: &PMat2,
    ) -> Result<(usize, PAdicScalar, PAdicScalar)> {
        let (b, kappa) = iwasawa(g)?;
        let (idx, c11, c22) = self.reduce_in_k(&kappa)?;
        Ok((idx, b.e[0][0].mul(&c11), b.e[1][1].mul(&c22)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_sizes_frozen() {
        assert_eq!(coset_basis(2, 0).unwrap().size(), 1);
        assert_eq!(coset_basis(5, 0).unwrap().size(), 1);
        assert_eq!(coset_basis(2, 1).unwrap().size(), 3);
        assert_eq!(coset_basis(3, 1).unwrap().size(), 4);
        assert_eq!(coset_basis(3, 2).unwrap().size(), 12);
        assert_eq!(coset_basis(5, 2).unwrap().size(), 30);
        assert!(matches!(coset_basis(2, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn representatives_partition_the_projective_line() {
        // Every unimodular bottom row mod p^m lands in exactly one coset,
        // and the cosets are hit uniformly (phi(p^m) rows apiece).
        for (p, m) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 3)] {
            let basis = coset_basis(p, m).unwrap();
            let pm = p.pow(m);
            let mut hits = vec![0usize; basis.size()];
            for x in 0..pm {
                for y in 0..pm {
                    if x % p != 0 || y % p != 0 {
                        let row = [
                            PAdicScalar::from_i64(p, x as i64, m + 8),
                            PAdicScalar::from_i64(p, y as i64, m + 8),
                        ];
                        hits[basis.locate(&row[0], &row[1]).unwrap()] += 1;
                    }
                }
            }
            let phi = (pm / p) * (p - 1);
            assert!(
                hits.iter().all(|&h| h == phi as usize),
                "non-uniform cosets for p={p}, m={m}: {hits:?}"
            );
        }
    }

    #[test]
    fn reduction_recovers_membership_data() {
        // For every K-matrix assembled from a unimodular bottom row, the
        // in-K reduction must produce unit diagonal entries and an index
        // agreeing with locate on the bottom row.
        for (p, m) in [(2u64, 2u32), (3, 1), (5, 1)] {
            let basis = coset_basis(p, m).unwrap();
            let pm = p.pow(m);
            for x in 0..pm {
                for y in 0..pm {
                    if x % p != 0 || y % p != 0 {
                        let (top, det_unit) = if y % p != 0 {
                            ([1i64, 0], y)
                        } else {
                            ([0i64, 1], x)
                        };
                        let kappa = PMat2::from_ints(
                            p,
                            [top, [x as i64, y as i64]],
                            m + 16,
                        );
                        assert!(det_unit % p != 0);
                        let (idx, b11, b22) = basis.reduce_in_k(&kappa).unwrap();
                        assert_eq!(
                            idx,
                            basis.locate(&kappa.e[1][0], &kappa.e[1][1]).unwrap()
                        );
                        assert_eq!(b11.valuation().unwrap(), 0);
                        assert_eq!(b22.valuation().unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn iwasawa_on_compact_elements_stays_compact() {
        for p in [2u64, 3, 5] {
            let g = PMat2::from_ints(p, [[3, 1], [5, 2]], 32);
            let (b, kappa) = iwasawa(&g).unwrap();
            assert!(kappa.is_in_k());
            assert!(b.e[1][0].is_exact_zero());
            assert_eq!(b.e[0][0].valuation().unwrap() + b.e[1][1].valuation().unwrap(), 0);
            assert!(b.mul(&kappa).agrees_with(&g));
        }
    }

    #[test]
    fn iwasawa_matches_the_displayed_identity() {
        // w * u(x) with val(x) = -r < 0 factors as
        // [[x^-1, -1], [0, x]] * [[1, 0], [x^-1, 1]].
        for (p, r) in [(2u64, 1i64), (3, 2), (5, 3)] {
            let x = rat(7, p.pow(r as u32) as i64);
            let g = PMat2::weyl(p, 64).mul(&PMat2::upper_unipotent(p, &x, 64));
            let (b, kappa) = iwasawa(&g).unwrap();
            let x_inv = PAdicScalar::from_rat(p, &(rat(1, 1) / &x), 64);
            assert!(b.e[0][0].sub(&x_inv).looks_zero());
            assert!(b.e[1][1].sub(&PAdicScalar::from_rat(p, &x, 64)).looks_zero());
            assert!(b
                .e[0][1]
                .sub(&PAdicScalar::from_i64(p, -1, 64))
                .looks_zero());
            assert!(kappa.agrees_with(&PMat2::lower_unipotent(x_inv, 64)));
        }
    }

    #[test]
    fn iwasawa_random_trials_remultiply() {
        let mut rng = ChaCha8Rng::seed_from_u64(20260822);
        let mut done = 0;
        while done < 1000 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let mut entries = [[rat(0, 1), rat(0, 1)], [rat(0, 1), rat(0, 1)]];
            for row in &mut entries {
                for x in row.iter_mut() {
                    let num = rng.gen_range(-50i64..=50);
                    let e = rng.gen_range(0u32..=3);
                    *x = rat(num, p.pow(e) as i64);
                }
            }
            let g = PMat2::from_rats(p, &entries, 80);
            let d = g.det();
            if d.is_exact_zero() || d.looks_zero() {
                continue;
            }
            let (b, kappa) = iwasawa(&g).unwrap();
            assert!(kappa.is_in_k());
            assert!(b.mul(&kappa).agrees_with(&g));
            done += 1;
        }
    }
}
