//! Decomposition of the dual nilradical by levels, Levi parity exponents,
//! the h_j exponents, exponent linearity, and the criticality test, bundled
//! into a single report per parabolic.
//!
//! The level of a radical root beta is the pairing of gamma_P with beta; the
//! levels always form a gapless range 1..=m. Each Levi simple factor carries
//! a parity bit epsilon recording whether its own half-sum of positive roots
//! has integer coordinates, and the h_j exponents pair the resulting
//! epsilon-weight with the coroots at each level.

use crate::error::{Error, Result};
use crate::parabolic::MaximalParabolic;
use crate::ratio::{as_i64, is_integer, rat, rint, Rat};
use crate::rootsys::{CartanType, Family, Weight};
use num::traits::Zero;
use std::collections::BTreeMap;

/// The radical roots of one level j, with (j, d_j) exposed.
#[derive(Clone, Debug)]
pub struct LevelBlock {
    pub j: usize,
    pub roots: Vec<Weight>,
}

impl LevelBlock {
    pub fn dim(&self) -> usize {
        self.roots.len()
    }
}

/// One simple factor of the Levi: a connected component of the Dynkin
/// diagram on Theta, or a one-dimensional torus direction not covered by
/// Theta. `epsilon` is 0 when the factor's half-sum of positive roots has
/// integer coordinates and 1 otherwise.
#[derive(Clone, Debug)]
pub struct LeviFactor {
    pub label: String,
    /// Indices into the datum's simple roots; empty for a torus direction.
    pub simple_indices: Vec<usize>,
    /// Coordinates touched by this factor.
    pub coords: Vec<usize>,
    pub rho: Weight,
    pub epsilon: u8,
}

/// Everything the toolkit computes for one maximal parabolic.
#[derive(Clone, Debug)]
pub struct LSReport {
    pub cartan: CartanType,
    pub alpha_index: usize,
    pub alpha_root: Weight,
    pub rho: Weight,
    pub gamma: Weight,
    pub k: Rat,
    pub integral: bool,
    pub m: usize,
    pub dims: Vec<usize>,
    pub factors: Vec<LeviFactor>,
    pub h: Vec<Rat>,
    pub critical: bool,
    pub self_associate: bool,
    /// Informational representation labels for the three worked families.
    pub note: Option<String>,
}

impl LSReport {
    pub fn epsilons(&self) -> Vec<u8> {
        self.factors.iter().map(|f| f.epsilon).collect()
    }
}

/// The level of a radical root: pairing(gamma_P, beta), a positive integer.
pub fn level(p: &MaximalParabolic, beta: &Weight) -> Result<usize> {
    let idx = p.datum().index_of_positive(beta).ok_or(Error::NotInRadical)?;
    if !p.radical_indices().contains(&idx) {
        return Err(Error::NotInRadical);
    }
    let value = p.datum().pairing(p.gamma(), beta)?;
    let j = as_i64(&value).expect("level pairing must be an integer");
    assert!(j > 0, "level must be positive, got {j}");
    Ok(j as usize)
}

/// Partition the radical roots by level; the levels form 1..=m with no gaps.
pub fn adjoint_levels(p: &MaximalParabolic) -> Vec<LevelBlock> {
    let mut by_level: BTreeMap<usize, Vec<Weight>> = BTreeMap::new();
    for beta in p.radical_roots() {
        let j = level(p, beta).expect("radical roots have levels");
        by_level.entry(j).or_default().push(beta.clone());
    }
    let m = *by_level.keys().next_back().expect("radical is nonempty");
    assert_eq!(
        by_level.keys().copied().collect::<Vec<_>>(),
        (1..=m).collect::<Vec<_>>(),
        "levels must be contiguous"
    );
    by_level.into_iter().map(|(j, roots)| LevelBlock { j, roots }).collect()
}

/// The simple factors of the Levi, ordered by smallest touched coordinate.
pub fn levi_factors(p: &MaximalParabolic) -> Vec<LeviFactor> {
    let datum = p.datum();
    let simples = datum.simple_roots();
    let theta = p.theta();

    // Connected components of the Dynkin diagram restricted to Theta.
    let mut remaining: Vec<usize> = theta.to_vec();
    let mut components: Vec<Vec<usize>> = Vec::new();
    while let Some(seed) = remaining.pop() {
        let mut comp = vec![seed];
        let mut frontier = vec![seed];
        while let Some(a) = frontier.pop() {
            let mut keep = Vec::new();
            for &b in &remaining {
                if simples[a].dot(&simples[b]).is_zero() {
                    keep.push(b);
                } else {
                    comp.push(b);
                    frontier.push(b);
                }
            }
            remaining = keep;
        }
        comp.sort_unstable();
        components.push(comp);
    }

    let covered_coords = |indices: &[usize]| -> Vec<usize> {
        let mut coords: Vec<usize> = (0..datum.dim())
            .filter(|&c| indices.iter().any(|&i| !simples[i].coords[c].is_zero()))
            .collect();
        coords.sort_unstable();
        coords
    };

    let mut factors: Vec<LeviFactor> = Vec::new();
    for comp in &components {
        let coords = covered_coords(comp);
        let rho = half_sum_supported(p, comp);
        let epsilon = if rho.has_integer_coords() { 0 } else { 1 };
        factors.push(LeviFactor {
            label: component_label(p, comp),
            simple_indices: comp.clone(),
            coords,
            rho,
            epsilon,
        });
    }
    // Torus directions: coordinates no Theta root touches.
    let all_covered = covered_coords(theta);
    for c in 0..datum.dim() {
        if !all_covered.contains(&c) {
            factors.push(LeviFactor {
                label: "GL1".to_string(),
                simple_indices: Vec::new(),
                coords: vec![c],
                rho: Weight::zero(datum.dim()),
                epsilon: 0,
            });
        }
    }
    factors.sort_by_key(|f| f.coords.first().copied().unwrap_or(usize::MAX));
    factors
}

/// Half-sum of the positive roots whose simple support lies in `indices`.
fn half_sum_supported(p: &MaximalParabolic, indices: &[usize]) -> Weight {
    let datum = p.datum();
    let mut sum = Weight::zero(datum.dim());
    for i in 0..datum.positive_roots().len() {
        let coeffs = datum.simple_coefficients(i);
        let supported = coeffs
            .iter()
            .enumerate()
            .all(|(s, &c)| c == 0 || indices.contains(&s));
        if supported {
            sum = sum.add(&datum.positive_roots()[i]);
        }
    }
    sum.scale(&rat(1, 2))
}

/// Name a connected component: branched diagrams are D, mixed root lengths
/// inherit the ambient family letter, and everything else is A.
fn component_label(p: &MaximalParabolic, comp: &[usize]) -> String {
    let simples = p.datum().simple_roots();
    let r = comp.len();
    let degree = |a: usize| {
        comp.iter().filter(|&&b| b != a && !simples[a].dot(&simples[b]).is_zero()).count()
    };
    if comp.iter().any(|&a| degree(a) >= 3) {
        return format!("D{r}");
    }
    let norms: Vec<Rat> = comp.iter().map(|&a| simples[a].dot(&simples[a])).collect();
    if norms.iter().all(|n| *n == norms[0]) {
        format!("A{r}")
    } else {
        format!("{}{r}", p.datum().cartan().family.letter())
    }
}

/// The determinant-type character of a linear-group factor: the sum of its
/// standard weights sigma_c e_c. Signs are forced by writing every factor
/// simple as a difference of two standard weights, anchored at +1 on the
/// smallest coordinate. Tail factors (whose roots span all their own
/// coordinates) carry no such character and get None.
fn block_character(p: &MaximalParabolic, f: &LeviFactor) -> Option<Weight> {
    if f.coords.len() != f.simple_indices.len() + 1 {
        return None;
    }
    let simples = p.datum().simple_roots();
    // Each simple in a linear-group factor touches exactly two coordinates
    // with entries +-1; e_a - e_b forces equal signs, e_a + e_b opposite
    // ones. The coordinate graph is a tree, so propagation from the anchor
    // determines every sign.
    let edges: Vec<(usize, usize, bool)> = f
        .simple_indices
        .iter()
        .map(|&i| {
            let nz: Vec<usize> = (0..simples[i].dim())
                .filter(|&c| !simples[i].coords[c].is_zero())
                .collect();
            assert_eq!(nz.len(), 2, "linear-factor simples touch two coordinates");
            let same_sign = simples[i].coords[nz[0]] != simples[i].coords[nz[1]];
            (nz[0], nz[1], same_sign)
        })
        .collect();
    let mut sign: BTreeMap<usize, i64> = BTreeMap::new();
    sign.insert(f.coords[0], 1);
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b, same) in &edges {
            let (known, unknown) = match (sign.contains_key(&a), sign.contains_key(&b)) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => continue,
            };
            let s = sign[&known];
            sign.insert(unknown, if same { s } else { -s });
            changed = true;
        }
    }
    let mut det = vec![Rat::zero(); p.datum().dim()];
    for &c in &f.coords {
        det[c] = rint(sign[&c]);
    }
    Some(Weight::new(det))
}

/// The epsilon-weight: sum of (epsilon_i/2) times the centre-restriction of
/// each factor's determinant-type character.
fn epsilon_weight(p: &MaximalParabolic, factors: &[LeviFactor]) -> Weight {
    let dim = p.datum().dim();
    let mut v = Weight::zero(dim);
    for f in factors {
        if f.epsilon == 1 {
            if let Some(det) = block_character(p, f) {
                let restricted = p.centre_projection(&det);
                v = v.add(&restricted.scale(&rat(1, 2)));
            }
            // A tail factor's own roots span its coordinates, so every
            // weight supported there restricts to zero on the centre.
        }
    }
    v
}

/// h_j = (epsilon-weight, beta-coroot) for any beta of level j; the value is
/// checked to be independent of the choice and to lie in (1/2)Z.
pub fn h_exponents(p: &MaximalParabolic) -> Vec<Rat> {
    let factors = levi_factors(p);
    let v = epsilon_weight(p, &factors);
    adjoint_levels(p)
        .iter()
        .map(|block| {
            let values: Vec<Rat> =
                block.roots.iter().map(|beta| v.dot(&beta.coroot())).collect();
            let h = values[0].clone();
            assert!(
                values.iter().all(|x| *x == h),
                "h_{} must not depend on the choice of root",
                block.j
            );
            assert!(is_integer(&(rint(2) * &h)), "2*h_j must be an integer");
            h
        })
        .collect()
}

/// Critical: j*k - h_j is an integer for every level j.
pub fn is_critical(p: &MaximalParabolic) -> bool {
    let k = p.evaluation_point();
    h_exponents(p)
        .iter()
        .enumerate()
        .all(|(idx, h)| is_integer(&(rint(idx as i64 + 1) * &k - h)))
}

/// At every level j the centre-restriction of each coroot equals j times the
/// common restriction of the level-1 coroots.
pub fn exponent_linearity_holds(p: &MaximalParabolic) -> bool {
    let blocks = adjoint_levels(p);
    let first = &blocks[0];
    assert_eq!(first.j, 1);
    let reference = p.centre_projection(&first.roots[0].coroot());
    blocks.iter().all(|block| {
        let expected = reference.scale(&rint(block.j as i64));
        block
            .roots
            .iter()
            .all(|beta| p.centre_projection(&beta.coroot()) == expected)
    })
}

/// Informational representation labels for the three worked families.
fn family_note(p: &MaximalParabolic) -> Option<String> {
    let cartan = p.datum().cartan();
    let last = cartan.num_simple() - 1;
    match (cartan.family, p.alpha_index()) {
        (Family::A, _) => {
            Some("tensor product of standard and dual standard".to_string())
        }
        (Family::D, 0) => Some("standard representation".to_string()),
        (Family::C, i) if i == last => {
            Some("standard representation and its exterior square".to_string())
        }
        _ => None,
    }
}

/// Aggregate every computed quantity for one parabolic.
pub fn ls_report(p: &MaximalParabolic) -> LSReport {
    let blocks = adjoint_levels(p);
    let dims: Vec<usize> = blocks.iter().map(LevelBlock::dim).collect();
    assert_eq!(dims.iter().sum::<usize>(), p.radical_indices().len());
    let factors = levi_factors(p);
    let h = h_exponents(p);
    debug_assert!(exponent_linearity_holds(p));
    debug_assert!((1..h.len()).all(|i| h[i] == rint(i as i64 + 1) * &h[0]));
    LSReport {
        cartan: p.datum().cartan(),
        alpha_index: p.alpha_index(),
        alpha_root: p.alpha_root(),
        rho: p.rho().clone(),
        gamma: p.gamma().clone(),
        k: p.evaluation_point(),
        integral: p.is_integral_on_centre(p.rho()),
        m: blocks.len(),
        dims,
        factors,
        h,
        critical: is_critical(p),
        self_associate: p.is_self_associate(),
        note: family_note(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::all_maximal_parabolics;
    use crate::rootsys::RootDatum;

    fn parabolic(family: Family, rank: usize, alpha: usize) -> MaximalParabolic {
        let datum = RootDatum::build(CartanType { family, rank }).unwrap();
        MaximalParabolic::new(datum, alpha).unwrap()
    }

    #[test]
    fn siegel_levels_split_long_and_short() {
        // Siegel parabolic of C4: the long radical roots 2e_i sit at level 1,
        // the roots e_i + e_j at level 2.
        let p = parabolic(Family::C, 4, 3);
        let two_e = Weight::from_i64(&[0, 2, 0, 0]);
        let e_plus_e = Weight::from_i64(&[1, 0, 0, 1]);
        assert_eq!(level(&p, &two_e).unwrap(), 1);
        assert_eq!(level(&p, &e_plus_e).unwrap(), 2);
        // A Levi root is not in the radical.
        let levi_root = Weight::from_i64(&[1, -1, 0, 0]);
        assert!(matches!(level(&p, &levi_root), Err(Error::NotInRadical)));
        let non_root = Weight::from_i64(&[1, 1, 1, 0]);
        assert!(matches!(level(&p, &non_root), Err(Error::NotInRadical)));
    }

    #[test]
    fn linear_group_radical_is_single_level() {
        for split in 1..5usize {
            let p = parabolic(Family::A, 5, split - 1);
            let blocks = adjoint_levels(&p);
            assert_eq!(blocks.len(), 1);
            assert_eq!(blocks[0].dim(), split * (5 - split));
        }
    }

    #[test]
    fn block_dimensions_frozen_for_worked_families() {
        for n in 2..=4usize {
            let p = parabolic(Family::D, n + 1, 0);
            let dims: Vec<usize> = adjoint_levels(&p).iter().map(LevelBlock::dim).collect();
            assert_eq!(dims, vec![2 * n], "D{} first node", n + 1);
        }
        for n in 2..=5usize {
            let p = parabolic(Family::C, n, n - 1);
            let dims: Vec<usize> = adjoint_levels(&p).iter().map(LevelBlock::dim).collect();
            assert_eq!(dims, vec![n, n * (n - 1) / 2], "C{n} Siegel");
        }
    }

    #[test]
    fn levi_parity_bits_match_block_sizes() {
        // GL(5), split 2+3: a GL(2) factor (half-integral rho) and a GL(3)
        // factor (integral rho).
        let p = parabolic(Family::A, 5, 1);
        let factors = levi_factors(&p);
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].label, "A1");
        assert_eq!(factors[0].epsilon, 1);
        assert_eq!(factors[1].label, "A2");
        assert_eq!(factors[1].epsilon, 0);

        // D5 first node: a torus direction and a D4 factor, both parity 0.
        let p = parabolic(Family::D, 5, 0);
        let factors = levi_factors(&p);
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].label, "GL1");
        assert_eq!(factors[0].epsilon, 0);
        assert_eq!(factors[1].label, "D4");
        assert_eq!(factors[1].epsilon, 0);

        // B4, second node: an A1 factor and a B2 tail whose rho is
        // half-integral.
        let p = parabolic(Family::B, 4, 1);
        let factors = levi_factors(&p);
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].label, "A1");
        assert_eq!(factors[0].epsilon, 1);
        assert_eq!(factors[1].label, "B2");
        assert_eq!(factors[1].rho, Weight::new(vec![rat(0, 1), rat(0, 1), rat(3, 2), rat(1, 2)]));
        assert_eq!(factors[1].epsilon, 1);
    }

    #[test]
    fn unbranched_tail_of_even_orthogonal_group_is_linear() {
        // D6 with the third node removed: the tail {3,4,5} contains the
        // branch pair but forms a path, so it is an A3 diagram.
        let p = parabolic(Family::D, 6, 2);
        let labels: Vec<String> =
            levi_factors(&p).into_iter().map(|f| f.label).collect();
        assert_eq!(labels, vec!["A2", "A3"]);
    }

    #[test]
    fn gl_n_levi_parity_follows_block_parity() {
        for big_n in 2..=7usize {
            for split in 1..big_n {
                let p = parabolic(Family::A, big_n, split - 1);
                let eps = ls_report(&p).epsilons();
                assert_eq!(eps.len(), 2);
                assert_eq!(eps[0], ((split as u8) - 1) % 2);
                assert_eq!(eps[1], ((big_n - split) as u8 - 1) % 2);
            }
        }
    }

    #[test]
    fn h_values_frozen_for_worked_families() {
        // GL_N: h_1 = (eps_n - eps_n')/2.
        for big_n in 2..=6usize {
            for split in 1..big_n {
                let p = parabolic(Family::A, big_n, split - 1);
                let eps_n = (split as i64 - 1) % 2;
                let eps_np = ((big_n - split) as i64 - 1) % 2;
                assert_eq!(h_exponents(&p), vec![rat(eps_n - eps_np, 2)]);
            }
        }
        // D first node: h_1 = 0.
        for n in 2..=5usize {
            assert_eq!(h_exponents(&parabolic(Family::D, n + 1, 0)), vec![rint(0)]);
        }
        // Siegel: h = (eps/2, eps) with eps = (n-1) mod 2.
        for n in 2..=6usize {
            let eps = (n as i64 - 1) % 2;
            assert_eq!(
                h_exponents(&parabolic(Family::C, n, n - 1)),
                vec![rat(eps, 2), rint(eps)],
                "C{n}"
            );
        }
    }

    #[test]
    fn even_orthogonal_linear_levi_h_values() {
        // Both GL_r Levi subgroups of the rank-r even orthogonal group: the
        // plain chain (branch node deleted) and the twisted chain through
        // the branch root (last chain node deleted). The factor determinant
        // is sum(e_i) - 2e_last in the twisted case, and h_1 = (r-1) mod 2
        // for both, matching the outer symmetry that swaps them.
        for r in 4..=7usize {
            let eps = (r as i64 - 1) % 2;
            let plain = parabolic(Family::D, r, r - 1);
            assert_eq!(h_exponents(&plain), vec![rint(eps)], "D{r} plain chain");
            assert!(is_critical(&plain));
            let twisted = parabolic(Family::D, r, r - 2);
            let factors = levi_factors(&twisted);
            assert_eq!(factors.len(), 1);
            assert_eq!(factors[0].label, format!("A{}", r - 1));
            assert_eq!(factors[0].epsilon, (eps != 0) as u8);
            assert_eq!(h_exponents(&twisted), vec![rint(eps)], "D{r} twisted chain");
            assert!(is_critical(&twisted));
        }
    }

    #[test]
    fn criticality_frozen_values() {
        for big_n in 2..=6usize {
            for split in 1..big_n {
                assert!(is_critical(&parabolic(Family::A, big_n, split - 1)));
            }
        }
        for n in 2..=6usize {
            assert!(is_critical(&parabolic(Family::C, n, n - 1)), "C{n} Siegel");
        }
        for n in 2..=5usize {
            assert!(is_critical(&parabolic(Family::D, n + 1, 0)));
        }
        // B2 with the long simple root deleted: k = -3/2 but h = (0, 0),
        // so the criticality test fails.
        let p = parabolic(Family::B, 2, 0);
        assert_eq!(p.evaluation_point(), rat(-3, 2));
        assert_eq!(h_exponents(&p), vec![rint(0), rint(0)]);
        assert!(!is_critical(&p));
    }

    #[test]
    fn coroot_restrictions_are_linear_in_the_level() {
        for (family, lo) in
            [(Family::A, 2), (Family::B, 1), (Family::C, 1), (Family::D, 2)]
        {
            for rank in lo..=8usize {
                let datum = RootDatum::build(CartanType { family, rank }).unwrap();
                for p in all_maximal_parabolics(&datum) {
                    assert!(exponent_linearity_holds(&p));
                }
            }
        }
    }

    #[test]
    fn levels_are_gapless_and_dimensions_add_up() {
        for (family, lo) in
            [(Family::A, 2), (Family::B, 1), (Family::C, 1), (Family::D, 2)]
        {
            for rank in lo..=6usize {
                let datum = RootDatum::build(CartanType { family, rank }).unwrap();
                for p in all_maximal_parabolics(&datum) {
                    let blocks = adjoint_levels(&p);
                    assert_eq!(blocks.first().unwrap().j, 1);
                    assert_eq!(blocks.last().unwrap().j, blocks.len());
                    let total: usize = blocks.iter().map(LevelBlock::dim).sum();
                    assert_eq!(total, p.radical_indices().len());
                    // h_j is well-defined, half-integral, and linear in j.
                    let h = h_exponents(&p);
                    for (idx, hj) in h.iter().enumerate() {
                        assert!(is_integer(&(rint(2) * hj)));
                        assert_eq!(*hj, rint(idx as i64 + 1) * &h[0]);
                    }
                }
            }
        }
    }

    #[test]
    fn report_frozen_examples() {
        let r = ls_report(&parabolic(Family::A, 4, 1));
        assert_eq!(r.k, rint(-2));
        assert!(r.integral);
        assert_eq!(r.m, 1);
        assert_eq!(r.dims, vec![4]);
        assert_eq!(r.h, vec![rint(0)]);
        assert!(r.critical);
        assert!(r.self_associate);
        assert!(r.note.is_some());

        let r = ls_report(&parabolic(Family::C, 3, 2));
        assert_eq!(r.k, rint(-2));
        assert!(r.integral);
        assert_eq!(r.m, 2);
        assert_eq!(r.dims, vec![3, 3]);
        assert_eq!(r.h, vec![rint(0), rint(0)]);
        assert!(r.critical);
        assert!(r.self_associate);

        let r = ls_report(&parabolic(Family::A, 2, 0));
        assert_eq!(r.k, rint(-1));
        assert!(!r.integral);
        assert_eq!(r.m, 1);
        assert!(r.critical);
    }
}
