//! The standard intertwining operator for a principal-series pair on GL(2)
//! at the point of evaluation, as an exact matrix in the level-m coset
//! basis: a finite sum of twisted coset evaluations plus an explicit
//! geometric-series term carrying the abelian L-value, together with the
//! normalised operator, right-translation matrices, Galois transport, and
//! the K-equivariance check.

use crate::error::{Error, Result};
use crate::exactnum::character::{
    l_value, restrictions_agree, right_of_axis_check, SmoothCharacter,
};
use crate::exactnum::cyclotomic::Cyclotomic;
use crate::gl2op::basis::{coset_basis, CosetBasis, PMat2};
use crate::ratio::{rat, rint};

/// The norm character |.| : chi(pi) = 1/q, tempered-weight 2.
pub fn norm_character(p: u64) -> SmoothCharacter {
    SmoothCharacter::unramified(
        p,
        Cyclotomic::from_rat(1, rat(1, p as i64)),
        rint(2),
    )
}

/// The pair the operator maps into: (chi2 * |.|, chi1 * |.|^-1).
pub fn target_pair(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
) -> (SmoothCharacter, SmoothCharacter) {
    let nc = norm_character(chi1.prime());
    (chi2.multiply(&nc), chi1.multiply(&nc.inverse()))
}

/// Both characters lifted into the compositum coefficient field.
pub(crate) fn widen_common(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
) -> (SmoothCharacter, SmoothCharacter, u64) {
    let n = num::integer::lcm(chi1.zeta_order(), chi2.zeta_order());
    (chi1.widen_zeta_order(n), chi2.widen_zeta_order(n), n)
}

/// Shared validity checks: one prime, and the pair factors through the
/// level (conductors at most m, so the induced basis is well defined).
pub(crate) fn validate_level_pair(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
) -> Result<()> {
    if chi1.prime() != p || chi2.prime() != p {
        return Err(Error::Precondition(format!(
            "characters live at primes {} and {}, expected {p}",
            chi1.prime(),
            chi2.prime()
        )));
    }
    let c = chi1.conductor_exponent().max(chi2.conductor_exponent());
    if c > m {
        return Err(Error::Precondition(format!(
            "conductor exponent {c} exceeds the level {m}"
        )));
    }
    Ok(())
}

/// A vector in the level-m induced space for (chi1, chi2), stored by its
/// values on the coset representatives (coefficients in the compositum).
#[derive(Clone, Debug)]
pub struct InducedVector {
    pub p: u64,
    pub m: u32,
    pub chi1: SmoothCharacter,
    pub chi2: SmoothCharacter,
    pub values: Vec<Cyclotomic>,
}

impl InducedVector {
    pub fn new(
        chi1: &SmoothCharacter,
        chi2: &SmoothCharacter,
        m: u32,
        values: Vec<Cyclotomic>,
    ) -> Result<InducedVector> {
        let p = chi1.prime();
        validate_level_pair(chi1, chi2, p, m)?;
        let basis = coset_basis(p, m)?;
        if values.len() != basis.size() {
            return Err(Error::Precondition(format!(
                "{} values for a basis of size {}",
                values.len(),
                basis.size()
            )));
        }
        let (w1, w2, n) = widen_common(chi1, chi2);
        let values = values.into_iter().map(|v| v.embed_into(n)).collect();
        Ok(InducedVector { p, m, chi1: w1, chi2: w2, values })
    }

    /// The i-th coset basis vector: 1 at representative i, 0 elsewhere.
    pub fn basis_vector(
        chi1: &SmoothCharacter,
        chi2: &SmoothCharacter,
        m: u32,
        i: usize,
    ) -> Result<InducedVector> {
        let basis = coset_basis(chi1.prime(), m)?;
        let n = num::integer::lcm(chi1.zeta_order(), chi2.zeta_order());
        let mut values = vec![Cyclotomic::zero(n); basis.size()];
        values[i] = Cyclotomic::one(n);
        InducedVector::new(chi1, chi2, m, values)
    }

    /// Evaluate the function at any g with entries in Z[1/p].
    pub fn evaluate(&self, g: &PMat2) -> Result<Cyclotomic> {
        let basis = coset_basis(self.p, self.m)?;
        let (idx, b11, b22) = basis.factor_through(g)?;
        let scalar = self.chi1.evaluate(&b11)?.mul(&self.chi2.evaluate(&b22)?);
        Ok(scalar.mul(&self.values[idx]))
    }
}

/// A linear map on the coset basis: entries[j][i] is the value of the image
/// of basis vector i at representative j.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub p: u64,
    pub m: u32,
    pub chi1: SmoothCharacter,
    pub chi2: SmoothCharacter,
    pub normalised: bool,
    pub entries: Vec<Vec<Cyclotomic>>,
}

impl OperatorMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, j: usize, i: usize) -> &Cyclotomic {
        &self.entries[j][i]
    }

    pub fn scaled(&self, f: &Cyclotomic) -> OperatorMatrix {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.mul(f)).collect())
            .collect();
        OperatorMatrix { entries, ..self.clone() }
    }

    /// Entrywise Galois twist zeta -> zeta^a, with the character data
    /// transported alongside.
    pub fn galois(&self, a: u64) -> OperatorMatrix {
        OperatorMatrix {
            p: self.p,
            m: self.m,
            chi1: self.chi1.galois_transform(a),
            chi2: self.chi2.galois_transform(a),
            normalised: self.normalised,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.galois(a)).collect())
                .collect(),
        }
    }

    pub fn entries_equal(&self, other: &OperatorMatrix) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(r, s)| r.iter().zip(s).all(|(a, b)| a == b))
    }

    /// Apply to a vector of the source pair; the image lives in the target
    /// pair's induced space at the same level.
    pub fn apply(&self, v: &InducedVector) -> Result<InducedVector> {
        if v.values.len() != self.size() {
            return Err(Error::Precondition("size mismatch".into()));
        }
        let n = self.entries[0][0].order();
        let values: Vec<Cyclotomic> = self
            .entries
            .iter()
            .map(|row| {
                row.iter().zip(&v.values).fold(Cyclotomic::zero(n), |acc, (e, x)| {
                    acc.add(&e.mul(&x.embed_into(n)))
                })
            })
            .collect();
        let (t1, t2) = target_pair(&self.chi1, &self.chi2);
        InducedVector::new(&t1, &t2, self.m, values)
    }
}

pub(crate) fn mat_mul(
    a: &[Vec<Cyclotomic>],
    b: &[Vec<Cyclotomic>],
) -> Vec<Vec<Cyclotomic>> {
    let size = a.len();
    let n = a[0][0].order();
    (0..size)
        .map(|j| {
            (0..size)
                .map(|i| {
                    (0..size).fold(Cyclotomic::zero(n), |acc, l| {
                        acc.add(&a[j][l].mul(&b[l][i]))
                    })
                })
                .collect()
        })
        .collect()
}

/// One evaluated term of the finite sum: basis vector i picks up `scalar`
/// at row j, and an unramified twist of chi1 would further multiply it by
/// z^z_power (the valuation of the upper-left Iwasawa entry).
pub(crate) struct FiniteSumTerm {
    pub j: usize,
    pub i: usize,
    pub scalar: Cyclotomic,
    pub z_power: u32,
}

/// Evaluate f_i(w u(a) kappa_j) over all a in P^-m/P^m and all j. The
/// z_power bookkeeping records how the term varies under unramified twists
/// of chi1; it is always within 0..=m.
pub(crate) fn finite_sum_terms(
    w1: &SmoothCharacter,
    w2: &SmoothCharacter,
    basis: &CosetBasis,
    precision: u32,
) -> Result<Vec<FiniteSumTerm>> {
    let p = basis.prime();
    let m = basis.level();
    let weyl = PMat2::weyl(p, precision);
    let denom = p.pow(m) as i64;
    let mut terms = Vec::new();
    for j in 0..basis.size() {
        let kj = basis.rep_matrix(j, precision);
        for t in 0..p.pow(2 * m) {
            let a = rat(t as i64, denom);
            let g = weyl.mul(&PMat2::upper_unipotent(p, &a, precision)).mul(&kj);
            let (i, b11, b22) = basis.factor_through(&g)?;
            let z_power = b11.valuation()?;
            assert!(
                (0..=m as i64).contains(&z_power),
                "upper-left valuation {z_power} escapes 0..={m}"
            );
            let scalar = w1.evaluate(&b11)?.mul(&w2.evaluate(&b22)?);
            terms.push(FiniteSumTerm { j, i, scalar, z_power: z_power as u32 });
        }
    }
    Ok(terms)
}

/// Data for the geometric-series tail: present exactly when the two
/// characters agree on units. With c = chi1(pi)chi2(pi)^-1 taken in the
/// compositum, coeff = (1 - 1/q)(cq)^(m+1); the tail contributes
/// coeff * L(-1) (resp. coeff * z^(m+1)/(1 - cqz)) on the diagonal.
pub(crate) struct TailData {
    pub coeff: Cyclotomic,
}

pub(crate) fn tail_data(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    m: u32,
) -> Option<TailData> {
    if !restrictions_agree(chi1, chi2) {
        return None;
    }
    let (w1, w2, _) = widen_common(chi1, chi2);
    let p = chi1.prime();
    let c = w1
        .value_at_uniformizer()
        .mul(&w2.value_at_uniformizer().inv());
    // (1 - 1/q) * q^(m+1) = (q - 1) * q^m, an integer.
    let scale = rint(((p - 1) * p.pow(m)) as i64);
    let coeff = c.pow((m + 1) as i64).scale(&scale);
    Some(TailData { coeff })
}

/// The standard intertwining operator at the point of evaluation, as an
/// exact matrix in the coset basis. Requires the pair to sit strictly
/// right of the convergence axis and the L-value at -1 to be finite.
pub fn intertwiner_matrix(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
) -> Result<OperatorMatrix> {
    validate_level_pair(chi1, chi2, p, m)?;
    if !right_of_axis_check(chi1, chi2) {
        return Err(Error::Precondition(
            "the pair is not strictly right of the convergence axis".into(),
        ));
    }
    let l_minus = l_value(chi1, chi2, -1)?;
    let basis = coset_basis(p, m)?;
    let precision = m + 64;
    let (w1, w2, n) = widen_common(chi1, chi2);
    let size = basis.size();
    let mut entries = vec![vec![Cyclotomic::zero(n); size]; size];
    let vol = rat(1, p.pow(m) as i64);
    for term in finite_sum_terms(&w1, &w2, &basis, precision)? {
        entries[term.j][term.i] =
            entries[term.j][term.i].add(&term.scalar.scale(&vol));
    }
    if let Some(tail) = tail_data(chi1, chi2, m) {
        let diag = tail.coeff.mul(&l_minus);
        for (j, row) in entries.iter_mut().enumerate() {
            row[j] = row[j].add(&diag);
        }
    }
    Ok(OperatorMatrix {
        p,
        m,
        chi1: chi1.clone(),
        chi2: chi2.clone(),
        normalised: false,
        entries,
    })
}

/// The normalised operator: the standard one divided by the ratio of
/// L-values L(-1)/L(0); both points must avoid the pole.
pub fn normalized_matrix(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
) -> Result<OperatorMatrix> {
    let t = intertwiner_matrix(chi1, chi2, p, m)?;
    let l_minus = l_value(chi1, chi2, -1)?;
    let l_zero = l_value(chi1, chi2, 0)?;
    let factor = l_zero.mul(&l_minus.inv());
    let mut out = t.scaled(&factor.embed_into(t.entries[0][0].order()));
    out.normalised = true;
    Ok(out)
}

/// The matrix of right translation by an integral k0 with unit determinant
/// on the level-m induced space for (chi1, chi2).
pub fn right_translation_matrix(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
    k0: [[i64; 2]; 2],
) -> Result<OperatorMatrix> {
    validate_level_pair(chi1, chi2, p, m)?;
    let det = k0[0][0] * k0[1][1] - k0[0][1] * k0[1][0];
    if det.rem_euclid(p as i64) == 0 {
        return Err(Error::Precondition(
            "translation element is not in K (determinant not a unit)".into(),
        ));
    }
    let basis = coset_basis(p, m)?;
    let precision = 2 * m + 64;
    let (w1, w2, n) = widen_common(chi1, chi2);
    let k_mat = PMat2::from_ints(p, k0, precision);
    let size = basis.size();
    let mut entries = vec![vec![Cyclotomic::zero(n); size]; size];
    for j in 0..size {
        let g = basis.rep_matrix(j, precision).mul(&k_mat);
        let (i, b11, b22) = basis.factor_through(&g)?;
        entries[j][i] = w1.evaluate(&b11)?.mul(&w2.evaluate(&b22)?);
    }
    Ok(OperatorMatrix {
        p,
        m,
        chi1: w1,
        chi2: w2,
        normalised: false,
        entries,
    })
}

/// Does the operator intertwine right translation by k0 between the source
/// and target induced spaces?
pub fn k_equivariance_check(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
    k0: [[i64; 2]; 2],
) -> Result<bool> {
    let t = intertwiner_matrix(chi1, chi2, p, m)?;
    let r_source = right_translation_matrix(chi1, chi2, p, m, k0)?;
    let (t1, t2) = target_pair(chi1, chi2);
    let r_target = right_translation_matrix(&t1, &t2, p, m, k0)?;
    let n = t.entries[0][0].order();
    let widen = |mat: &OperatorMatrix| -> Vec<Vec<Cyclotomic>> {
        mat.entries
            .iter()
            .map(|row| row.iter().map(|e| e.embed_into(n)).collect())
            .collect()
    };
    let lhs = mat_mul(&widen(&t), &widen(&r_source));
    let rhs = mat_mul(&widen(&r_target), &widen(&t));
    Ok(lhs == rhs)
}
