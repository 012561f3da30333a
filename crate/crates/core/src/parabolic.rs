//! Maximal parabolic subgroups P = MN of a classical group, described by a
//! deleted simple root: the roots of the unipotent radical, the half-sum
//! rho_P, the fundamental weight gamma_P in the alpha_P direction, the point
//! of evaluation, restriction of characters to the split centre of the Levi,
//! and the associate parabolic.

use crate::error::{Error, Result};
use crate::linalg::IntLattice;
use crate::ratio::{rat, rint, Rat};
use crate::rootsys::{RootDatum, Weight, WeylElement};
use num::traits::Zero;

/// A maximal parabolic, fixed by the index of the deleted simple root.
/// Construction precomputes the radical, rho_P, gamma_P, the projection to
/// the centre direction, and the restricted character lattice.
#[derive(Clone, Debug)]
pub struct MaximalParabolic {
    datum: RootDatum,
    alpha_index: usize,
    theta: Vec<usize>,
    /// Indices (into the datum's positive roots) of the radical roots.
    radical: Vec<usize>,
    rho: Weight,
    gamma: Weight,
    /// Columns of the averaging projection onto the W_Theta-fixed subspace.
    projection_columns: Vec<Weight>,
    /// Restrictions of root-lattice characters to the centre direction.
    restricted_lattice: IntLattice,
}

impl MaximalParabolic {
    pub fn new(datum: RootDatum, alpha_index: usize) -> Result<Self> {
        let num_simple = datum.simple_roots().len();
        if alpha_index >= num_simple {
            return Err(Error::BadSimpleIndex(format!("{alpha_index} of {num_simple}")));
        }
        let theta: Vec<usize> = (0..num_simple).filter(|&i| i != alpha_index).collect();

        // Radical roots: positive roots whose expansion touches alpha_P.
        let radical: Vec<usize> = (0..datum.positive_roots().len())
            .filter(|&i| datum.simple_coefficients(i)[alpha_index] != 0)
            .collect();
        debug_assert!(radical.iter().all(|&i| datum.simple_coefficients(i)[alpha_index] > 0));

        let mut sum = Weight::zero(datum.dim());
        for &i in &radical {
            sum = sum.add(&datum.positive_roots()[i]);
        }
        let rho = sum.scale(&rat(1, 2));

        let alpha = datum.positive_roots()[find_positive_index(&datum, alpha_index)].clone();
        let denom = datum.pairing(&rho, &alpha)?;
        assert!(!denom.is_zero());
        let gamma = rho.scale(&(rint(1) / &denom));

        // The average over W_Theta is the orthogonal projection onto the
        // common fixed space of the Theta-reflections, i.e. onto the
        // orthogonal complement of span(Theta): averaging is idempotent,
        // fixes exactly that subspace, and sends the invariant complement
        // span(Theta) to 0. So project by solving the Gram system on the
        // Theta simple roots instead of enumerating the group.
        let theta_roots: Vec<Weight> =
            theta.iter().map(|&i| datum.simple_roots()[i].clone()).collect();
        let projection_columns: Vec<Weight> = (0..datum.dim())
            .map(|i| {
                let mut basis = vec![Rat::zero(); datum.dim()];
                basis[i] = rint(1);
                project_off_span(&Weight::new(basis), &theta_roots)
            })
            .collect();

        // Integrality on the split centre A of the Levi is decided against
        // the projection of the ROOT lattice — the character lattice of the
        // maximal torus in the adjoint form.  That lattice is canonical for
        // the root system itself, whereas the coordinate lattice Z^dim
        // depends on the chosen realization; projecting Z^dim would count
        // characters of A that are only half-powers of the restrictions of
        // roots (the symplectic Siegel case is the standard example).  The
        // Theta simples project to zero, so the image is the Z-span of the
        // projected deleted root.
        let restricted_lattice = IntLattice::from_spanning_set(
            &datum
                .simple_roots()
                .iter()
                .map(|a| project_off_span(a, &theta_roots).coords)
                .collect::<Vec<_>>(),
        );

        let p = MaximalParabolic {
            datum,
            alpha_index,
            theta,
            radical,
            rho,
            gamma,
            projection_columns,
            restricted_lattice,
        };

        // gamma_P is the fundamental weight in the alpha_P direction:
        // pairing 1 against alpha_P, 0 against every Theta root.
        debug_assert_eq!(p.datum.pairing(&p.gamma, &p.alpha_root()).unwrap(), rint(1));
        debug_assert!(p
            .theta
            .iter()
            .all(|&i| p.datum.pairing(&p.gamma, &p.datum.simple_roots()[i]).unwrap().is_zero()));
        // Radical roots are exactly the positive roots seen by gamma_P.
        debug_assert!(p
            .radical
            .iter()
            .all(|&i| p.datum.pairing(&p.datum.positive_roots()[i], &p.alpha_root()).is_ok()));
        Ok(p)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn alpha_index(&self) -> usize {
        self.alpha_index
    }

    pub fn alpha_root(&self) -> Weight {
        self.datum.simple_roots()[self.alpha_index].clone()
    }

    /// Indices of the simple roots generating the Levi.
    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    /// The positive roots of the unipotent radical, in the datum's order.
    pub fn radical_roots(&self) -> impl Iterator<Item = &Weight> {
        self.radical.iter().map(|&i| &self.datum.positive_roots()[i])
    }

    pub fn radical_indices(&self) -> &[usize] {
        &self.radical
    }

    /// Half-sum of the radical roots.
    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// rho_P normalized to pairing 1 against alpha_P.
    pub fn gamma(&self) -> &Weight {
        &self.gamma
    }

    /// Point of evaluation -<rho_P, alpha_P-coroot>; twice this is always
    /// an integer.
    pub fn evaluation_point(&self) -> Rat {
        let k = -self.datum.pairing(&self.rho, &self.alpha_root()).unwrap();
        assert!(crate::ratio::is_integer(&(&k * rint(2))), "2k must be an integer");
        k
    }

    /// Restriction to the split centre of the Levi: the average over the
    /// Levi Weyl group, computed as an exact orthogonal projection.
    pub fn centre_projection(&self, w: &Weight) -> Weight {
        assert_eq!(w.dim(), self.datum.dim());
        let mut acc = Weight::zero(self.datum.dim());
        for (col, c) in self.projection_columns.iter().zip(&w.coords) {
            acc = acc.add(&col.scale(c));
        }
        acc
    }

    /// Lattice of restrictions of integral characters of the torus.
    pub fn restricted_lattice(&self) -> &IntLattice {
        &self.restricted_lattice
    }

    /// Is the centre-restriction of lambda the restriction of a root-lattice
    /// character? Exact lattice membership of the projection.
    pub fn is_integral_on_centre(&self, lambda: &Weight) -> bool {
        self.restricted_lattice.contains(&self.centre_projection(lambda).coords)
    }

    /// w0 = (longest element of W) * (longest element of W_Theta).
    pub fn w_zero(&self) -> WeylElement {
        let all: Vec<usize> = (0..self.datum.simple_roots().len()).collect();
        let w_g = self.datum.longest_element(&all).unwrap();
        let w_theta = self.datum.longest_element(&self.theta).unwrap();
        let w0 = self.datum.compose(&w_g, &w_theta).unwrap();
        assert_eq!(w0.length(), w_g.length() - w_theta.length());
        w0
    }

    /// The associate parabolic Q (the one whose Levi is conjugate via w0),
    /// together with w0 itself. Q is maximal for the same datum; its
    /// deleted simple root is the one missing from w0(Theta).
    pub fn associate(&self) -> Result<(MaximalParabolic, WeylElement)> {
        let w0 = self.w_zero();
        let mut image_indices: Vec<usize> = Vec::with_capacity(self.theta.len());
        for &i in &self.theta {
            let img = w0.apply(&self.datum.simple_roots()[i]);
            let pos = self
                .datum
                .simple_roots()
                .iter()
                .position(|s| *s == img)
                .expect("w0 must send Theta into the simple roots");
            image_indices.push(pos);
        }
        image_indices.sort_unstable();
        image_indices.dedup();
        assert_eq!(image_indices.len(), self.theta.len(), "w0(Theta) must be |Theta| distinct simples");
        // w0 sends alpha_P to a negative root.
        let alpha_image = w0.apply(&self.alpha_root());
        assert!(self.datum.is_positive_root(&alpha_image.neg()));

        let num_simple = self.datum.simple_roots().len();
        let missing: Vec<usize> =
            (0..num_simple).filter(|i| !image_indices.contains(i)).collect();
        assert_eq!(missing.len(), 1);
        let q = MaximalParabolic::new(self.datum.clone(), missing[0])?;
        // The defining pairing is shared between the two associates.
        assert_eq!(
            self.datum.pairing(self.rho(), &self.alpha_root()).unwrap(),
            self.datum.pairing(q.rho(), &q.alpha_root()).unwrap()
        );
        Ok((q, w0))
    }

    pub fn is_self_associate(&self) -> bool {
        self.associate().map(|(q, _)| q.alpha_index == self.alpha_index).unwrap_or(false)
    }
}

fn find_positive_index(datum: &RootDatum, simple_index: usize) -> usize {
    let alpha = &datum.simple_roots()[simple_index];
    datum
        .index_of_positive(alpha)
        .expect("simple roots are positive roots")
}

/// lambda minus its orthogonal projection onto the span of the given
/// (linearly independent) vectors.
fn project_off_span(lambda: &Weight, span: &[Weight]) -> Weight {
    if span.is_empty() {
        return lambda.clone();
    }
    // Solve the Gram system G c = (lambda, t_i).
    let gram_columns: Vec<Vec<Rat>> = (0..span.len())
        .map(|j| span.iter().map(|t| t.dot(&span[j])).collect())
        .collect();
    let rhs: Vec<Rat> = span.iter().map(|t| lambda.dot(t)).collect();
    let coeffs = crate::linalg::solve_columns(&gram_columns, &rhs)
        .expect("Gram matrix of independent vectors is invertible");
    let mut inside = Weight::zero(lambda.dim());
    for (c, t) in coeffs.iter().zip(span) {
        inside = inside.add(&t.scale(c));
    }
    lambda.sub(&inside)
}

/// All maximal parabolics of a datum, by deleted-root index.
pub fn all_maximal_parabolics(datum: &RootDatum) -> Vec<MaximalParabolic> {
    (0..datum.simple_roots().len())
        .map(|i| MaximalParabolic::new(datum.clone(), i).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rint};
    use crate::rootsys::{CartanType, Family};
    use crate::testutil::{average_over, enumerate_weyl_subgroup};

    fn parabolic(family: Family, rank: usize, alpha: usize) -> MaximalParabolic {
        let datum = RootDatum::build(CartanType { family, rank }).unwrap();
        MaximalParabolic::new(datum, alpha).unwrap()
    }

    #[test]
    fn gl4_middle_parabolic_frozen() {
        // GL(4), Levi GL(2) x GL(2): rho_P = (1,1,-1,-1), k = -2.
        let p = parabolic(Family::A, 4, 1);
        assert_eq!(p.rho(), &Weight::from_i64(&[1, 1, -1, -1]));
        assert_eq!(p.evaluation_point(), rint(-2));
        assert_eq!(p.radical_indices().len(), 4);
        assert!(p.is_integral_on_centre(p.rho()));
    }

    #[test]
    fn gl4_projection_matches_group_average() {
        // The production projection agrees with the brute-force average
        // over the Levi Weyl group (order 4 for GL(2) x GL(2)).
        let p = parabolic(Family::A, 4, 1);
        let group = enumerate_weyl_subgroup(p.datum(), p.theta());
        assert_eq!(group.len(), 4);
        let e1 = Weight::from_i64(&[1, 0, 0, 0]);
        let expected = Weight::new(vec![rat(1, 2), rat(1, 2), rint(0), rint(0)]);
        assert_eq!(average_over(&group, &e1), expected);
        assert_eq!(p.centre_projection(&e1), expected);
        // And on a second, asymmetric vector.
        let v = Weight::from_i64(&[3, 1, 0, 2]);
        assert_eq!(p.centre_projection(&v), average_over(&group, &v));
    }

    #[test]
    fn c3_siegel_projection_matches_group_average() {
        let p = parabolic(Family::C, 3, 2);
        let group = enumerate_weyl_subgroup(p.datum(), p.theta());
        assert_eq!(group.len(), 6);
        let v = Weight::from_i64(&[1, 2, 4]);
        assert_eq!(p.centre_projection(&v), average_over(&group, &v));
    }

    #[test]
    fn c3_siegel_data_frozen() {
        // Siegel parabolic of Sp(6): rho_P = 2(e1+e2+e3), k = -2, integral.
        let p = parabolic(Family::C, 3, 2);
        assert_eq!(p.rho(), &Weight::from_i64(&[2, 2, 2]));
        assert_eq!(p.gamma(), &Weight::from_i64(&[1, 1, 1]));
        assert_eq!(p.evaluation_point(), rint(-2));
        assert!(p.is_integral_on_centre(p.rho()));
        assert!(p.is_self_associate());
    }

    #[test]
    fn d5_first_node_data_frozen() {
        // SO(10)-type datum, first node removed: rho_P = 4*e0, k = -4.
        let p = parabolic(Family::D, 5, 0);
        assert_eq!(p.rho(), &Weight::from_i64(&[4, 0, 0, 0, 0]));
        assert_eq!(p.evaluation_point(), rint(-4));
        assert_eq!(p.radical_indices().len(), 8);
        assert!(p.is_integral_on_centre(p.rho()));
    }

    #[test]
    fn gl_integrality_parity_table() {
        // rho_P restricted to the centre is integral iff n*n' is even.
        for big_n in 2..=7usize {
            for split in 1..big_n {
                let p = parabolic(Family::A, big_n, split - 1);
                let n_times_nprime = split * (big_n - split);
                assert_eq!(
                    p.is_integral_on_centre(p.rho()),
                    n_times_nprime % 2 == 0,
                    "GL({big_n}) split {split}"
                );
            }
        }
    }

    #[test]
    fn siegel_integrality_mod_four_table() {
        // Siegel parabolic of C_n: integral iff n = 0, 3 mod 4.
        for n in 1..=9usize {
            let p = parabolic(Family::C, n, n - 1);
            assert_eq!(
                p.is_integral_on_centre(p.rho()),
                n % 4 == 0 || n % 4 == 3,
                "C{n} Siegel"
            );
        }
    }

    #[test]
    fn twice_rho_is_always_integral_on_centre() {
        for (family, max) in [(Family::A, 6), (Family::B, 5), (Family::C, 5), (Family::D, 5)] {
            let lo = match family {
                Family::A | Family::D => 2,
                _ => 1,
            };
            for rank in lo..=max {
                let datum = RootDatum::build(CartanType { family, rank }).unwrap();
                for p in all_maximal_parabolics(&datum) {
                    let two_rho = p.rho().scale(&rint(2));
                    assert!(p.is_integral_on_centre(&two_rho));
                    let two_k = p.evaluation_point() * rint(2);
                    assert!(crate::ratio::is_integer(&two_k));
                }
            }
        }
    }

    #[test]
    fn projection_is_idempotent_and_theta_invariant() {
        let p = parabolic(Family::B, 4, 1);
        let v = Weight::new(vec![rat(3, 2), rint(-1), rat(7, 3), rint(5)]);
        let once = p.centre_projection(&v);
        assert_eq!(p.centre_projection(&once), once);
        // Invariance under each Levi reflection, both before and after.
        for &i in p.theta() {
            let s = p.datum().simple_reflection(i).unwrap();
            assert_eq!(p.centre_projection(&s.apply(&v)), once);
            assert_eq!(s.apply(&once), once);
        }
    }

    #[test]
    fn gl3_associate_swaps_the_unequal_split() {
        // GL(3), Levi GL(2) x GL(1) -> associate has Levi GL(1) x GL(2).
        let p = parabolic(Family::A, 3, 1);
        let (q, w0) = p.associate().unwrap();
        assert_eq!(q.alpha_index(), 0);
        assert!(!p.is_self_associate());
        // w0 sends Theta into the simple roots and alpha_P to a negative.
        for &i in p.theta() {
            let img = w0.apply(&p.datum().simple_roots()[i]);
            assert!(p.datum().simple_roots().contains(&img));
        }
        assert!(p.datum().is_positive_root(&w0.apply(&p.alpha_root()).neg()));
    }

    #[test]
    fn gl4_middle_is_self_associate() {
        assert!(parabolic(Family::A, 4, 1).is_self_associate());
        assert!(!parabolic(Family::A, 4, 0).is_self_associate());
    }

    #[test]
    fn associate_pairing_matches_for_small_ranks() {
        for (family, rank) in [(Family::A, 4), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let datum = RootDatum::build(CartanType { family, rank }).unwrap();
            for p in all_maximal_parabolics(&datum) {
                let (q, _) = p.associate().unwrap();
                assert_eq!(p.evaluation_point(), q.evaluation_point());
            }
        }
    }

    #[test]
    fn borel_of_gl2_values() {
        let p = parabolic(Family::A, 2, 0);
        assert_eq!(p.evaluation_point(), rat(-1, 1));
        assert!(!p.is_integral_on_centre(p.rho()));
        assert!(p.is_self_associate());
    }

    #[test]
    fn bad_alpha_index_is_rejected() {
        let datum = RootDatum::build(CartanType { family: Family::A, rank: 3 }).unwrap();
        assert!(MaximalParabolic::new(datum, 2).is_err());
    }
}
