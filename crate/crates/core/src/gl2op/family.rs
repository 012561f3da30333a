//! The operator as a family in an unramified twist: replace chi1 by
//! chi1 * nu_z with nu_z(pi) = z formal. Every matrix entry becomes a
//! rational function of z whose denominator is at most one power of
//! (1 - c q z), c = chi1(pi) chi2(pi)^-1; specializing z = 1 recovers the
//! operator at the point of evaluation.

use crate::error::{Error, Result};
use crate::exactnum::character::{l_value, right_of_axis_check, SmoothCharacter};
use crate::exactnum::cyclotomic::Cyclotomic;
use crate::gl2op::basis::coset_basis;
use crate::gl2op::operator::{
    finite_sum_terms, tail_data, validate_level_pair, widen_common,
    OperatorMatrix,
};
use crate::ratio::{rat, Rat};

/// One matrix entry: num(z) / (1 - cqz)^denom_power, numerator stored by
/// ascending powers of z.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalEntry {
    pub num: Vec<Cyclotomic>,
    pub denom_power: u32,
}

impl RationalEntry {
    pub fn numerator_degree(&self) -> usize {
        self.num
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Evaluate at a rational z; cq is the denominator coefficient.
    pub fn evaluate(&self, z: &Rat, cq: &Cyclotomic) -> Result<Cyclotomic> {
        let n = cq.order();
        let mut value = Cyclotomic::zero(n);
        let mut zp = Rat::from_integer(1.into());
        for coeff in &self.num {
            value = value.add(&coeff.scale(&zp));
            zp = &zp * z;
        }
        if self.denom_power > 0 {
            let denom = Cyclotomic::one(n).sub(&cq.scale(z));
            if denom.is_zero() {
                return Err(Error::Pole(format!(
                    "family denominator vanishes at z = {z}"
                )));
            }
            for _ in 0..self.denom_power {
                value = value.mul(&denom.inv());
            }
        }
        Ok(value)
    }
}

/// The operator with chi1 twisted by a formal unramified character.
#[derive(Clone, Debug)]
pub struct RationalFamilyMatrix {
    pub p: u64,
    pub m: u32,
    pub chi1: SmoothCharacter,
    pub chi2: SmoothCharacter,
    /// chi1(pi) chi2(pi)^-1 * q: the coefficient in the denominator.
    pub cq: Cyclotomic,
    pub entries: Vec<Vec<RationalEntry>>,
}

pub fn rational_family(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
) -> Result<RationalFamilyMatrix> {
    validate_level_pair(chi1, chi2, p, m)?;
    if !right_of_axis_check(chi1, chi2) {
        return Err(Error::Precondition(
            "the pair is not strictly right of the convergence axis".into(),
        ));
    }
    // Specialization at z = 1 must be defined.
    l_value(chi1, chi2, -1)?;
    let basis = coset_basis(p, m)?;
    let precision = m + 64;
    let (w1, w2, n) = widen_common(chi1, chi2);
    let size = basis.size();
    let c = w1
        .value_at_uniformizer()
        .mul(&w2.value_at_uniformizer().inv());
    let cq = c.scale(&Rat::from_integer(p.into()));

    // Finite-sum part: polynomial entries of degree at most m.
    let vol = rat(1, p.pow(m) as i64);
    let mut entries = vec![
        vec![
            RationalEntry {
                num: vec![Cyclotomic::zero(n); m as usize + 2],
                denom_power: 0
            };
            size
        ];
        size
    ];
    for term in finite_sum_terms(&w1, &w2, &basis, precision)? {
        let slot = &mut entries[term.j][term.i].num[term.z_power as usize];
        *slot = slot.add(&term.scalar.scale(&vol));
    }

    // Geometric tail: coeff * z^(m+1) / (1 - cqz) on the diagonal. Put the
    // affected entries over the common denominator.
    if let Some(tail) = tail_data(chi1, chi2, m) {
        for (j, row) in entries.iter_mut().enumerate() {
            let poly = &row[j].num;
            // num' = poly * (1 - cqz) + coeff * z^(m+1); poly has degree
            // at most m, so the product fits in m+2 slots.
            let mut num = vec![Cyclotomic::zero(n); m as usize + 2];
            for (d, coeff) in poly.iter().enumerate().take(m as usize + 1) {
                num[d] = num[d].add(coeff);
                num[d + 1] = num[d + 1].sub(&coeff.mul(&cq));
            }
            num[m as usize + 1] = num[m as usize + 1].add(&tail.coeff);
            row[j] = RationalEntry { num, denom_power: 1 };
        }
    }
    Ok(RationalFamilyMatrix {
        p,
        m,
        chi1: chi1.clone(),
        chi2: chi2.clone(),
        cq,
        entries,
    })
}

impl RationalFamilyMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Largest denominator exponent over all entries.
    pub fn max_denominator_power(&self) -> u32 {
        self.entries
            .iter()
            .flatten()
            .map(|e| e.denom_power)
            .max()
            .unwrap_or(0)
    }

    /// Specialize the twist variable to a rational value.
    pub fn evaluate_at(&self, z: &Rat) -> Result<OperatorMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.evaluate(z, &self.cq))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorMatrix {
            p: self.p,
            m: self.m,
            chi1: self.chi1.clone(),
            chi2: self.chi2.clone(),
            normalised: false,
            entries,
        })
    }

    /// The specialization at z = 1: the operator at the point of
    /// evaluation.
    pub fn specialize(&self) -> Result<OperatorMatrix> {
        self.evaluate_at(&Rat::from_integer(1.into()))
    }
}
