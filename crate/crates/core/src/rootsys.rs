//! Classical root systems in standard coordinates, with exact arithmetic
//! throughout.
//!
//! Type A is kept in GL-style coordinates: `A` with ambient dimension N has
//! the N-1 simple roots e_i - e_{i+1} inside Z^N (the full diagonal torus,
//! not the trace-zero slice). Types B, C, D use their usual realizations in
//! Z^n. The invariant bilinear form is the standard Euclidean pairing in
//! every case.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::solve_columns;
use crate::ratio::{as_i64, is_nonneg_integer, Rat};
use num::traits::Zero;

pub const MAX_RANK: usize = 9;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "A" | "a" => Some(Family::A),
            "B" | "b" => Some(Family::B),
            "C" | "c" => Some(Family::C),
            "D" | "d" => Some(Family::D),
            _ => None,
        }
    }
}

/// A classical type together with its ambient coordinate count.
///
/// `rank` is the dimension of the coordinate space: N for type A (a system
/// of Lie rank N-1) and n for types B, C, D.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (2..=MAX_RANK).contains(&rank),
            Family::B | Family::C => (1..=MAX_RANK).contains(&rank),
            Family::D => (2..=MAX_RANK).contains(&rank),
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::UnsupportedRank(format!(
                "{}{} (supported: A 2..={m}, B/C 1..={m}, D 2..={m})",
                family.letter(),
                rank,
                m = MAX_RANK
            )))
        }
    }

    /// Number of simple roots.
    pub fn num_simple(self) -> usize {
        match self.family {
            Family::A => self.rank - 1,
            _ => self.rank,
        }
    }

    /// Textbook count of positive roots.
    pub fn positive_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n - 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
        }
    }

    pub fn label(self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }
}

/// An exact-rational coordinate vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Weight {
    pub coords: Vec<Rat>,
}

impl Weight {
    pub fn new(coords: Vec<Rat>) -> Self {
        Weight { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Weight { coords: vec![Rat::zero(); dim] }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Weight { coords: coords.iter().map(|&c| crate::ratio::rint(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Standard Euclidean pairing (the invariant form in all four families).
    pub fn dot(&self, other: &Weight) -> Rat {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.dim(), other.dim());
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.dim(), other.dim());
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, f: &Rat) -> Weight {
        Weight::new(self.coords.iter().map(|c| c * f).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight::new(self.coords.iter().map(|c| -c).collect())
    }

    /// The coroot 2v/(v,v) of a nonzero vector.
    pub fn coroot(&self) -> Weight {
        let norm = self.dot(self);
        assert!(!norm.is_zero());
        self.scale(&(crate::ratio::rint(2) / norm))
    }

    pub fn has_integer_coords(&self) -> bool {
        self.coords.iter().all(crate::ratio::is_integer)
    }
}

/// A Weyl-group element: a signed-permutation integer matrix acting on
/// coordinates, together with a reduced word in the simple reflections.
/// Equality is equality of matrices.
#[derive(Clone, Debug)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        let matrix = (0..dim)
            .map(|r| (0..dim).map(|c| i64::from(r == c)).collect())
            .collect();
        WeylElement { matrix, word: Vec::new() }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        assert_eq!(self.dim(), w.dim());
        let coords = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&w.coords)
                    .fold(Rat::zero(), |acc, (&m, c)| acc + c * crate::ratio::rint(m))
            })
            .collect();
        Weight::new(coords)
    }

    /// Matrix product self * other (acting as self after other).
    fn mul_matrix(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n)
            .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect())
            .collect()
    }
}

/// A root datum: simple roots in Dynkin order, the full set of positive
/// roots (closed under the Weyl action, sorted lexicographically), and the
/// expansion of each positive root in the simple basis.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan: CartanType,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    /// simple_coeffs[i][j] = coefficient of simple root j in positive root i.
    simple_coeffs: Vec<Vec<i64>>,
    positive_set: BTreeSet<Weight>,
    simple_reflections: Vec<WeylElement>,
}

impl RootDatum {
    pub fn build(cartan: CartanType) -> Result<RootDatum> {
        let cartan = CartanType::new(cartan.family, cartan.rank)?;
        let simple_roots = simple_root_vectors(cartan);

        let simple_reflections: Vec<WeylElement> = simple_roots
            .iter()
            .enumerate()
            .map(|(i, alpha)| WeylElement { matrix: reflection_matrix(alpha), word: vec![i] })
            .collect();

        // Close the simple roots under the simple reflections.
        let mut all: BTreeSet<Weight> = simple_roots.iter().cloned().collect();
        loop {
            let mut fresh: Vec<Weight> = Vec::new();
            for r in &all {
                for s in &simple_reflections {
                    let image = s.apply(r);
                    if !all.contains(&image) {
                        fresh.push(image);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            all.extend(fresh);
        }

        // Positive roots are the ones with non-negative expansion in the
        // simple basis; expansions double as the invariant check.
        let columns: Vec<Vec<Rat>> = simple_roots.iter().map(|s| s.coords.clone()).collect();
        let mut positive_roots = Vec::new();
        let mut simple_coeffs = Vec::new();
        for r in &all {
            let Some(x) = solve_columns(&columns, &r.coords) else {
                return Err(Error::NotARoot);
            };
            if x.iter().all(is_nonneg_integer) {
                positive_roots.push(r.clone());
                simple_coeffs.push(x.iter().map(|c| as_i64(c).unwrap()).collect());
            }
        }
        assert_eq!(
            positive_roots.len(),
            cartan.positive_count(),
            "positive-root closure does not match the textbook count for {}",
            cartan.label()
        );
        assert_eq!(2 * positive_roots.len(), all.len());

        let positive_set = positive_roots.iter().cloned().collect();
        Ok(RootDatum {
            cartan,
            simple_roots,
            positive_roots,
            simple_coeffs,
            positive_set,
            simple_reflections,
        })
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    /// Ambient coordinate dimension; the character lattice of the maximal
    /// torus is Z^dim on the standard basis.
    pub fn dim(&self) -> usize {
        self.cartan.rank
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Expansion of positive root `i` in the simple basis.
    pub fn simple_coefficients(&self, i: usize) -> &[i64] {
        &self.simple_coeffs[i]
    }

    pub fn is_positive_root(&self, w: &Weight) -> bool {
        self.positive_set.contains(w)
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.positive_set.contains(w) || self.positive_set.contains(&w.neg())
    }

    pub fn index_of_positive(&self, w: &Weight) -> Option<usize> {
        self.positive_roots.binary_search(w).ok()
    }

    /// 2(lambda, alpha)/(alpha, alpha); `alpha` must be a root of the datum.
    pub fn pairing(&self, lambda: &Weight, alpha: &Weight) -> Result<Rat> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot);
        }
        Ok(lambda.dot(&alpha.coroot()))
    }

    pub fn simple_reflection(&self, i: usize) -> Result<&WeylElement> {
        self.simple_reflections
            .get(i)
            .ok_or_else(|| Error::BadSimpleIndex(format!("{i} of {}", self.simple_roots.len())))
    }

    /// Longest element of the parabolic subgroup generated by the listed
    /// simple reflections, built greedily: as long as some generator's root
    /// is still sent to a positive root, append that reflection.
    pub fn longest_element(&self, theta: &[usize]) -> Result<WeylElement> {
        for &i in theta {
            if i >= self.simple_roots.len() {
                return Err(Error::BadSimpleIndex(format!("{i} of {}", self.simple_roots.len())));
            }
        }
        let mut w = WeylElement::identity(self.dim());
        let bound = self.positive_roots.len();
        loop {
            let next = theta
                .iter()
                .copied()
                .find(|&i| self.is_positive_root(&w.apply(&self.simple_roots[i])));
            match next {
                Some(i) => {
                    w = WeylElement {
                        matrix: WeylElement::mul_matrix(&w.matrix, &self.simple_reflections[i].matrix),
                        word: {
                            let mut word = w.word;
                            word.push(i);
                            word
                        },
                    };
                    assert!(w.word.len() <= bound, "longest-element search exceeded the root count");
                }
                None => break,
            }
        }
        Ok(w)
    }

    /// Reconstruct an element (with a reduced word) from its matrix. Errors
    /// if the matrix does not belong to the Weyl group. Peeling off a
    /// descent shortens the element by exactly one letter, so the collected
    /// letters form a reduced word.
    pub fn element_from_matrix(&self, matrix: Vec<Vec<i64>>) -> Result<WeylElement> {
        let dim = self.dim();
        if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
            return Err(Error::Precondition("matrix dimension mismatch".into()));
        }
        let mut cur = matrix.clone();
        let mut letters_rev: Vec<usize> = Vec::new();
        let identity = WeylElement::identity(dim).matrix;
        let bound = self.positive_roots.len();
        while cur != identity {
            let probe = WeylElement { matrix: cur.clone(), word: Vec::new() };
            let descent = (0..self.simple_roots.len())
                .find(|&i| !self.is_positive_root(&probe.apply(&self.simple_roots[i])));
            let Some(i) = descent else {
                return Err(Error::Precondition("matrix is not a Weyl-group element".into()));
            };
            if !self.is_root(&probe.apply(&self.simple_roots[i])) {
                return Err(Error::Precondition("matrix is not a Weyl-group element".into()));
            }
            cur = WeylElement::mul_matrix(&cur, &self.simple_reflections[i].matrix);
            letters_rev.push(i);
            if letters_rev.len() > bound {
                return Err(Error::Precondition("matrix is not a Weyl-group element".into()));
            }
        }
        letters_rev.reverse();
        let w = WeylElement { matrix, word: letters_rev };
        // Re-multiplying the word must reproduce the matrix.
        let mut check = WeylElement::identity(dim).matrix;
        for &i in &w.word {
            check = WeylElement::mul_matrix(&check, &self.simple_reflections[i].matrix);
        }
        assert_eq!(check, w.matrix);
        Ok(w)
    }

    /// Product a*b with a freshly reduced word.
    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        self.element_from_matrix(WeylElement::mul_matrix(&a.matrix, &b.matrix))
    }

    /// Half-sum of the positive roots.
    pub fn half_sum_positive(&self) -> Weight {
        let mut acc = Weight::zero(self.dim());
        for r in &self.positive_roots {
            acc = acc.add(r);
        }
        acc.scale(&crate::ratio::rat(1, 2))
    }
}

fn simple_root_vectors(cartan: CartanType) -> Vec<Weight> {
    let n = cartan.rank;
    let e = |i: usize, j_opt: Option<(usize, i64)>, scale: i64| -> Weight {
        let mut c = vec![0i64; n];
        c[i] = scale;
        if let Some((j, s)) = j_opt {
            c[j] = s;
        }
        Weight::from_i64(&c)
    };
    match cartan.family {
        Family::A => (0..n - 1).map(|i| e(i, Some((i + 1, -1)), 1)).collect(),
        Family::B => {
            let mut v: Vec<Weight> = (0..n.saturating_sub(1)).map(|i| e(i, Some((i + 1, -1)), 1)).collect();
            v.push(e(n - 1, None, 1));
            v
        }
        Family::C => {
            let mut v: Vec<Weight> = (0..n.saturating_sub(1)).map(|i| e(i, Some((i + 1, -1)), 1)).collect();
            v.push(e(n - 1, None, 2));
            v
        }
        Family::D => {
            let mut v: Vec<Weight> = (0..n - 1).map(|i| e(i, Some((i + 1, -1)), 1)).collect();
            v.push(e(n - 2, Some((n - 1, 1)), 1));
            v
        }
    }
}

/// Reflection matrix in the hyperplane orthogonal to `alpha`; a signed
/// permutation with integer entries for every classical root.
fn reflection_matrix(alpha: &Weight) -> Vec<Vec<i64>> {
    let dim = alpha.dim();
    let norm = alpha.dot(alpha);
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    let mut v = if r == c { crate::ratio::rint(1) } else { Rat::zero() };
                    v = v - crate::ratio::rint(2) * &alpha.coords[r] * &alpha.coords[c] / &norm;
                    as_i64(&v).expect("classical reflection matrices are integral")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rint};
    use crate::testutil::enumerate_weyl_group;

    fn datum(family: Family, rank: usize) -> RootDatum {
        RootDatum::build(CartanType { family, rank }).unwrap()
    }

    #[test]
    fn a2_positive_roots_frozen() {
        // Closure of {e1-e2, e2-e3} in GL(3) coordinates, sorted.
        let d = datum(Family::A, 3);
        let expect: Vec<Weight> = vec![
            Weight::from_i64(&[0, 1, -1]),
            Weight::from_i64(&[1, -1, 0]),
            Weight::from_i64(&[1, 0, -1]),
        ];
        assert_eq!(d.positive_roots(), expect.as_slice());
    }

    #[test]
    fn c2_positive_roots_frozen() {
        // Closure of {e1-e2, 2e2}: both long roots and both short roots.
        let d = datum(Family::C, 2);
        let expect: Vec<Weight> = vec![
            Weight::from_i64(&[0, 2]),
            Weight::from_i64(&[1, -1]),
            Weight::from_i64(&[1, 1]),
            Weight::from_i64(&[2, 0]),
        ];
        assert_eq!(d.positive_roots(), expect.as_slice());
    }

    #[test]
    fn positive_counts_match_textbook_for_all_supported_ranks() {
        for rank in 2..=MAX_RANK {
            assert_eq!(datum(Family::A, rank).positive_roots().len(), rank * (rank - 1) / 2);
        }
        for rank in 1..=MAX_RANK {
            assert_eq!(datum(Family::B, rank).positive_roots().len(), rank * rank);
            assert_eq!(datum(Family::C, rank).positive_roots().len(), rank * rank);
        }
        for rank in 2..=MAX_RANK {
            assert_eq!(datum(Family::D, rank).positive_roots().len(), rank * (rank - 1));
        }
    }

    #[test]
    fn cartan_matrices_frozen() {
        // C2: pairing(a1, a2-coroot) = -1, pairing(a2, a1-coroot) = -2.
        let c2 = datum(Family::C, 2);
        let (a1, a2) = (&c2.simple_roots()[0], &c2.simple_roots()[1]);
        assert_eq!(c2.pairing(a1, a2).unwrap(), rint(-1));
        assert_eq!(c2.pairing(a2, a1).unwrap(), rint(-2));
        // B2 transposes the C2 matrix.
        let b2 = datum(Family::B, 2);
        let (b1, bshort) = (&b2.simple_roots()[0], &b2.simple_roots()[1]);
        assert_eq!(b2.pairing(b1, bshort).unwrap(), rint(-2));
        assert_eq!(b2.pairing(bshort, b1).unwrap(), rint(-1));
        // D4 branch node pairs with the two tips.
        let d4 = datum(Family::D, 4);
        assert_eq!(d4.pairing(&d4.simple_roots()[1], &d4.simple_roots()[3]).unwrap(), rint(-1));
        assert_eq!(d4.pairing(&d4.simple_roots()[0], &d4.simple_roots()[3]).unwrap(), rint(0));
    }

    #[test]
    fn pairing_rejects_non_roots() {
        let d = datum(Family::A, 3);
        let not_root = Weight::from_i64(&[1, 1, 0]);
        assert!(d.pairing(&d.simple_roots()[0], &not_root).is_err());
    }

    #[test]
    fn pairing_is_integral_on_the_character_lattice() {
        // 2(e_i, alpha)/(alpha, alpha) lands in Z for every lattice vector
        // and every root, in all four families.
        for (family, rank) in [(Family::A, 4), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let d = datum(family, rank);
            for i in 0..d.dim() {
                let mut basis = vec![0i64; d.dim()];
                basis[i] = 1;
                let ei = Weight::from_i64(&basis);
                for alpha in d.positive_roots() {
                    assert!(crate::ratio::is_integer(&d.pairing(&ei, alpha).unwrap()));
                }
            }
        }
    }

    #[test]
    fn reflections_preserve_the_form() {
        let d = datum(Family::D, 4);
        let lam = Weight::new(vec![rat(1, 2), rint(3), rat(-2, 3), rint(0)]);
        let mu = Weight::new(vec![rint(1), rat(1, 5), rint(2), rat(7, 2)]);
        for i in 0..4 {
            let s = d.simple_reflection(i).unwrap();
            assert_eq!(s.apply(&lam).dot(&s.apply(&mu)), lam.dot(&mu));
        }
    }

    #[test]
    fn a2_longest_element_matches_exhaustive_search() {
        let d = datum(Family::A, 3);
        let group = enumerate_weyl_group(&d);
        assert_eq!(group.len(), 6);
        // The unique element sending every simple root to a negative root.
        let longest: Vec<_> = group
            .iter()
            .filter(|m| {
                let w = WeylElement { matrix: (*m).clone(), word: vec![] };
                d.simple_roots().iter().all(|a| d.is_positive_root(&w.apply(a).neg()))
            })
            .collect();
        assert_eq!(longest.len(), 1);
        let w = d.longest_element(&[0, 1]).unwrap();
        assert_eq!(w.matrix(), longest[0].as_slice());
        assert_eq!(w.length(), 3);
        // Coordinate reversal in GL(3) coordinates.
        assert_eq!(w.matrix(), &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn c2_longest_element_is_minus_identity() {
        let d = datum(Family::C, 2);
        assert_eq!(enumerate_weyl_group(&d).len(), 8);
        let w = d.longest_element(&[0, 1]).unwrap();
        assert_eq!(w.length(), 4);
        assert_eq!(w.matrix(), &[vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn longest_element_of_sub_parabolic() {
        // Theta = {0} inside A2: just the one reflection.
        let d = datum(Family::A, 3);
        let w = d.longest_element(&[0]).unwrap();
        assert_eq!(w.length(), 1);
        assert_eq!(w, *d.simple_reflection(0).unwrap());
        // Empty theta: identity.
        assert_eq!(d.longest_element(&[]).unwrap(), WeylElement::identity(3));
    }

    #[test]
    fn element_from_matrix_recovers_reduced_words() {
        let d = datum(Family::B, 3);
        // A scrambled, non-reduced word.
        let word = [0usize, 1, 0, 2, 1, 2, 2, 0];
        let mut m = WeylElement::identity(3).matrix().to_vec();
        for &i in &word {
            m = WeylElement::mul_matrix(&m, d.simple_reflection(i).unwrap().matrix());
        }
        let w = d.element_from_matrix(m.clone()).unwrap();
        assert_eq!(w.matrix(), m.as_slice());
        assert!(w.length() <= word.len());
        // Reduced words multiply back to the matrix (asserted internally) and
        // the length is the number of positive roots sent negative.
        let neg_count = d
            .positive_roots()
            .iter()
            .filter(|r| d.is_positive_root(&w.apply(r).neg()))
            .count();
        assert_eq!(w.length(), neg_count);
    }

    #[test]
    fn element_from_matrix_rejects_outsiders() {
        let d = datum(Family::A, 3);
        // A permutation-like matrix that is not orthogonal on the roots.
        let bad = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(d.element_from_matrix(bad).is_err());
    }

    #[test]
    fn rank_bounds_are_enforced() {
        assert!(RootDatum::build(CartanType { family: Family::A, rank: 1 }).is_err());
        assert!(RootDatum::build(CartanType { family: Family::D, rank: 1 }).is_err());
        assert!(RootDatum::build(CartanType { family: Family::B, rank: MAX_RANK + 1 }).is_err());
        assert!(RootDatum::build(CartanType { family: Family::C, rank: 1 }).is_ok());
    }
}
