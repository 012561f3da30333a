//! Named invariant suites behind the `verify` subcommand. Every check is a
//! self-contained sweep that returns a one-line verdict; a suite passes
//! when all of its checks do. The sweeps favour exhaustive small-rank
//! coverage over sampling so that a pass is a statement, not a hint.

use crate::exactnum::character::{canonical_generators, unit_order, SmoothCharacter};
use crate::exactnum::cyclotomic::Cyclotomic;
use crate::gl2op::{
    intertwiner_matrix, k_equivariance_check, normalized_matrix, numeric_oracle,
    oracle_deviation, rational_family,
};
use crate::lsdecomp::{adjoint_levels, h_exponents, ls_report};
use crate::parabolic::{all_maximal_parabolics, MaximalParabolic};
use crate::ratio::{is_integer, rat, rint, Rat};
use crate::rootsys::{CartanType, Family, RootDatum, Weight, MAX_RANK};
use num::traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One verdict line: the invariant's name and whether it held.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
}

fn verdict(out: &mut Vec<Verdict>, name: &str, pass: bool) {
    out.push(Verdict { name: name.into(), pass });
}

/// The suites `verify` knows, in the order they run under `all`.
pub const SUITE_NAMES: [&str; 4] = ["rootsys", "parabolic", "lsdecomp", "gl2"];

/// Run one named suite; `None` when the name is unknown.
pub fn run_suite(name: &str) -> Option<Vec<Verdict>> {
    match name {
        "rootsys" => Some(rootsys_suite()),
        "parabolic" => Some(parabolic_suite()),
        "lsdecomp" => Some(lsdecomp_suite()),
        "gl2" => Some(gl2_suite()),
        _ => None,
    }
}

fn all_data(max_rank: usize) -> Vec<RootDatum> {
    let mut data = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        let lo = match family {
            Family::A | Family::D => 2,
            Family::B | Family::C => 1,
        };
        for rank in lo..=max_rank {
            let cartan = CartanType::new(family, rank).expect("in-range rank");
            data.push(RootDatum::build(cartan).expect("supported datum"));
        }
    }
    data
}

fn sweep_parabolics(max_rank: usize) -> Vec<MaximalParabolic> {
    all_data(max_rank)
        .iter()
        .flat_map(all_maximal_parabolics)
        .collect()
}

// ---------------------------------------------------------------- rootsys

pub fn rootsys_suite() -> Vec<Verdict> {
    let mut out = Vec::new();

    let mut counts = true;
    for datum in all_data(MAX_RANK) {
        counts &= datum.positive_roots().len() == datum.cartan().positive_count();
    }
    verdict(&mut out, "positive-root counts match the closed formulas", counts);

    let mut decomp = true;
    for datum in all_data(MAX_RANK) {
        for (i, beta) in datum.positive_roots().iter().enumerate() {
            let coeffs = datum.simple_coefficients(i);
            let mut acc = Weight::zero(datum.dim());
            for (c, alpha) in coeffs.iter().zip(datum.simple_roots()) {
                decomp &= *c >= 0;
                acc = acc.add(&alpha.scale(&rint(*c)));
            }
            decomp &= &acc == beta;
        }
    }
    verdict(
        &mut out,
        "positive roots are nonnegative sums of simple roots",
        decomp,
    );

    let mut reflections = true;
    for datum in all_data(5) {
        for i in 0..datum.cartan().num_simple() {
            let s = datum.simple_reflection(i).expect("valid index");
            for beta in datum.positive_roots() {
                let image = s.apply(beta);
                reflections &= datum.is_root(&image);
                reflections &= image.dot(&image) == beta.dot(beta);
            }
        }
    }
    verdict(
        &mut out,
        "simple reflections permute the roots and preserve lengths",
        reflections,
    );

    let mut longest = true;
    for datum in all_data(5) {
        let theta: Vec<usize> = (0..datum.cartan().num_simple()).collect();
        let w0 = datum.longest_element(&theta).expect("full diagram");
        let square = datum.compose(&w0, &w0).expect("same datum");
        longest &= square.length() == 0;
        longest &= w0.length() == datum.positive_roots().len();
        for beta in datum.positive_roots() {
            longest &= datum.is_positive_root(&w0.apply(beta).neg());
        }
    }
    verdict(
        &mut out,
        "longest elements are involutions sending all positive roots negative",
        longest,
    );

    out
}

// -------------------------------------------------------------- parabolic

pub fn parabolic_suite() -> Vec<Verdict> {
    let mut out = Vec::new();
    let parabolics = sweep_parabolics(6);

    let mut gamma = true;
    for p in &parabolics {
        let datum = p.datum();
        gamma &= datum
            .pairing(p.gamma(), &p.alpha_root())
            .map(|v| v == rint(1))
            .unwrap_or(false);
        for &j in p.theta() {
            let alpha = datum.simple_roots()[j].clone();
            gamma &= datum
                .pairing(p.gamma(), &alpha)
                .map(|v| v.is_zero())
                .unwrap_or(false);
        }
    }
    verdict(
        &mut out,
        "the fundamental weight pairs to one with the deleted root and kills the rest",
        gamma,
    );

    let mut half = true;
    for p in &parabolics {
        half &= is_integer(&(p.evaluation_point() * rint(2)));
    }
    verdict(&mut out, "twice the evaluation point is an integer", half);

    let mut assoc = true;
    for p in &parabolics {
        let (q, w0) = p.associate().expect("associate exists");
        let here = p.datum().pairing(p.rho(), &p.alpha_root()).expect("root");
        let there = q.datum().pairing(q.rho(), &q.alpha_root()).expect("root");
        assoc &= here == there;
        assoc &= p.datum().is_positive_root(&w0.apply(&p.alpha_root()).neg());
        for &j in p.theta() {
            let img = w0.apply(&p.datum().simple_roots()[j]);
            assoc &= p
                .datum()
                .simple_roots()
                .iter()
                .position(|s| *s == img)
                .map(|i| i != q.alpha_index())
                .unwrap_or(false);
        }
        assoc &= p.is_self_associate() == (q.alpha_index() == p.alpha_index());
    }
    verdict(
        &mut out,
        "associate parabolics preserve the defining pairing",
        assoc,
    );

    let mut proj = true;
    let mut rng = ChaCha8Rng::seed_from_u64(7_031);
    for p in &parabolics {
        let dim = p.datum().dim();
        for _ in 0..5 {
            let coords: Vec<Rat> =
                (0..dim).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
            let w = Weight::new(coords);
            let once = p.centre_projection(&w);
            proj &= p.centre_projection(&once) == once;
        }
        for &j in p.theta() {
            let alpha = p.datum().simple_roots()[j].clone();
            proj &= p.centre_projection(&alpha).is_zero();
        }
        proj &= p.centre_projection(p.gamma()) == p.gamma().clone();
    }
    verdict(
        &mut out,
        "the centre projection is idempotent, kills the Levi roots, and fixes the fundamental weight",
        proj,
    );

    let mut delta = true;
    for p in &parabolics {
        delta &= p.is_integral_on_centre(&p.rho().scale(&rint(2)));
    }
    verdict(
        &mut out,
        "twice rho always restricts integrally to the centre",
        delta,
    );

    out
}

// --------------------------------------------------------------- lsdecomp

pub fn lsdecomp_suite() -> Vec<Verdict> {
    let mut out = Vec::new();
    let parabolics = sweep_parabolics(6);

    let mut levels = true;
    for p in &parabolics {
        let blocks = adjoint_levels(p);
        let total: usize = blocks.iter().map(|b| b.dim()).sum();
        levels &= total == p.radical_indices().len();
        for (idx, block) in blocks.iter().enumerate() {
            levels &= block.j == idx + 1;
            levels &= block.dim() >= 1;
        }
    }
    verdict(
        &mut out,
        "adjoint levels are contiguous from one and exhaust the radical",
        levels,
    );

    let mut linear = true;
    for p in &parabolics {
        let h = h_exponents(p);
        for (idx, hj) in h.iter().enumerate() {
            linear &= is_integer(&(hj.clone() * rint(2)));
            linear &= hj.clone() == h[0].clone() * rint(idx as i64 + 1);
        }
    }
    verdict(
        &mut out,
        "h exponents are half-integers growing linearly in the level",
        linear,
    );

    let mut crit = true;
    for p in &parabolics {
        let r = ls_report(p);
        let all_integral = (1..=r.m).all(|j| {
            let jr = rint(j as i64);
            is_integer(&(jr * r.k.clone() - r.h[j - 1].clone()))
        });
        crit &= r.critical == all_integral;
    }
    verdict(
        &mut out,
        "criticality agrees with integrality of every level exponent",
        crit,
    );

    let mut lin_table = true;
    for big_n in 2..=MAX_RANK {
        let datum = RootDatum::build(CartanType::new(Family::A, big_n).unwrap()).unwrap();
        for split in 1..big_n {
            let p = MaximalParabolic::new(datum.clone(), split - 1).unwrap();
            let r = ls_report(&p);
            let n = split;
            let np = big_n - split;
            lin_table &= r.integral == ((n * np) % 2 == 0);
            lin_table &= r.k == rat(-(big_n as i64), 2);
            lin_table &= r.m == 1 && r.dims == vec![n * np];
            let eps = |x: usize| (x as i64 - 1) % 2;
            lin_table &= r.h == vec![rat(eps(n) - eps(np), 2)];
            lin_table &= r.critical;
        }
    }
    verdict(
        &mut out,
        "the linear-group family reproduces its worked table",
        lin_table,
    );

    let mut even_table = true;
    for n in 2..=(MAX_RANK - 1) {
        let datum = RootDatum::build(CartanType::new(Family::D, n + 1).unwrap()).unwrap();
        let p = MaximalParabolic::new(datum, 0).unwrap();
        let r = ls_report(&p);
        even_table &= r.integral;
        even_table &= r.k == rint(-(n as i64));
        even_table &= r.m == 1 && r.dims == vec![2 * n];
        even_table &= r.h == vec![rint(0)];
        even_table &= r.critical;
    }
    verdict(
        &mut out,
        "the even-orthogonal first-node family reproduces its worked table",
        even_table,
    );

    let mut siegel_table = true;
    for n in 2..=MAX_RANK {
        let datum = RootDatum::build(CartanType::new(Family::C, n).unwrap()).unwrap();
        let p = MaximalParabolic::new(datum, n - 1).unwrap();
        let r = ls_report(&p);
        siegel_table &= r.integral == (n % 4 == 0 || n % 4 == 3);
        siegel_table &= r.k == rat(-(n as i64 + 1), 2);
        siegel_table &= r.dims == vec![n, n * (n - 1) / 2];
        let eps = (n as i64 - 1) % 2;
        siegel_table &= r.h == vec![rat(eps, 2), rint(eps)];
        siegel_table &= r.critical;
    }
    verdict(
        &mut out,
        "the Siegel-parabolic family reproduces its worked table",
        siegel_table,
    );

    out
}

// -------------------------------------------------------------------- gl2

fn unram_pow(p: u64, num: i64, weight: i64) -> SmoothCharacter {
    let value = Cyclotomic::from_rat(1, rat(num, p.pow((weight / 2) as u32) as i64));
    SmoothCharacter::unramified(p, value, rint(weight))
}

/// A seeded random weight-consistent pair with conductors at most
/// `max_conductor`, a common coefficient order at most 24, and weight gap 4
/// or 6 (so the operator, its normalisation, and the family all exist).
pub fn random_character_pair(
    rng: &mut ChaCha8Rng,
    p: u64,
    max_conductor: u32,
) -> (SmoothCharacter, SmoothCharacter) {
    let gap = if rng.gen_bool(0.5) { 4 } else { 6 };
    let chi1 = random_character(rng, p, max_conductor, gap);
    let chi2 = random_character(rng, p, max_conductor, 0);
    (chi1, chi2)
}

fn random_character(
    rng: &mut ChaCha8Rng,
    p: u64,
    max_conductor: u32,
    weight: i64,
) -> SmoothCharacter {
    let c = rng.gen_range(0..=max_conductor);
    let choices = [1u64, 2, 3, 4, 6, 8, 12, 24];
    let n = choices[rng.gen_range(0..choices.len())];
    let modulus = p.pow(c);
    let exps: Vec<u64> = canonical_generators(p, c)
        .iter()
        .map(|&g| {
            let step = n / gcd(n, unit_order(g, modulus));
            step * rng.gen_range(0..n / step)
        })
        .collect();
    let s = rng.gen_range(0..n) as i64;
    let value = Cyclotomic::zeta_pow(n, s)
        .scale(&rat(1, p.pow((weight / 2) as u32) as i64));
    SmoothCharacter::from_generator_exponents(p, c, n, &exps, value, rint(weight))
        .expect("constructed exponents respect the generator orders")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Automorphism indices of the coefficient field of the pair's compositum.
fn automorphism_indices(chi1: &SmoothCharacter, chi2: &SmoothCharacter) -> Vec<u64> {
    let n = num::integer::lcm(chi1.zeta_order(), chi2.zeta_order());
    (1..=n).filter(|a| gcd(*a, n) == 1).collect()
}

/// Does the operator transport along every coefficient-field automorphism,
/// both unnormalised and normalised?
pub fn galois_transport_holds(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
) -> bool {
    let t = match intertwiner_matrix(chi1, chi2, p, m) {
        Ok(t) => t,
        Err(_) => return false,
    };
    let tn = match normalized_matrix(chi1, chi2, p, m) {
        Ok(t) => t,
        Err(_) => return false,
    };
    for a in automorphism_indices(chi1, chi2) {
        let s1 = chi1.galois_transform(a);
        let s2 = chi2.galois_transform(a);
        let direct = match intertwiner_matrix(&s1, &s2, p, m) {
            Ok(t) => t,
            Err(_) => return false,
        };
        let direct_n = match normalized_matrix(&s1, &s2, p, m) {
            Ok(t) => t,
            Err(_) => return false,
        };
        if !t.galois(a).entries_equal(&direct) || !tn.galois(a).entries_equal(&direct_n) {
            return false;
        }
    }
    true
}

/// A random determinant-unit integer matrix with entries mod p^max(2m,1).
pub fn random_compact_element(rng: &mut ChaCha8Rng, p: u64, m: u32) -> [[i64; 2]; 2] {
    let modulus = p.pow((2 * m).max(1)) as i64;
    loop {
        let k0 = [
            [rng.gen_range(0..modulus), rng.gen_range(0..modulus)],
            [rng.gen_range(0..modulus), rng.gen_range(0..modulus)],
        ];
        let det = k0[0][0] * k0[1][1] - k0[0][1] * k0[1][0];
        if det.rem_euclid(p as i64) != 0 {
            return k0;
        }
    }
}

pub fn gl2_suite() -> Vec<Verdict> {
    let mut out = Vec::new();

    let mut gk_norm = true;
    let mut gk_std = true;
    for q in [2u64, 3, 5] {
        for gap in [4i64, 6] {
            for sign in [1i64, -1] {
                let chi1 = unram_pow(q, sign, gap);
                let chi2 = SmoothCharacter::trivial(q);
                let tn = normalized_matrix(&chi1, &chi2, q, 0).expect("axis holds");
                gk_norm &= tn.entry(0, 0).as_rat() == Some(rint(1));
                let t = intertwiner_matrix(&chi1, &chi2, q, 0).expect("axis holds");
                let c = rat(sign, q.pow((gap / 2) as u32) as i64);
                let expected =
                    (rint(1) - c.clone()) / (rint(1) - c * rint(q as i64));
                gk_std &= t.entry(0, 0).as_rat() == Some(expected);
            }
        }
    }
    verdict(
        &mut out,
        "the rank-one normalised operator is exactly one",
        gk_norm,
    );
    verdict(
        &mut out,
        "the rank-one standard operator matches its closed form",
        gk_std,
    );

    let mut galois = true;
    let mut rng = ChaCha8Rng::seed_from_u64(40_870);
    for p in [2u64, 3] {
        for _ in 0..3 {
            let (chi1, chi2) = random_character_pair(&mut rng, p, 2);
            let m = chi1.conductor_exponent().max(chi2.conductor_exponent()).max(1);
            galois &= galois_transport_holds(&chi1, &chi2, p, m);
        }
    }
    verdict(
        &mut out,
        "operators transport along every coefficient-field automorphism",
        galois,
    );

    let mut family = true;
    let ram = SmoothCharacter::quadratic(3).multiply(&unram_pow(3, 1, 4));
    let cases: [(SmoothCharacter, SmoothCharacter, u64, u32); 2] = [
        (unram_pow(2, 1, 4), SmoothCharacter::trivial(2), 2, 1),
        (ram.clone(), SmoothCharacter::quadratic(3), 3, 1),
    ];
    for (chi1, chi2, p, m) in &cases {
        match (rational_family(chi1, chi2, *p, *m), intertwiner_matrix(chi1, chi2, *p, *m)) {
            (Ok(fam), Ok(t)) => {
                family &= fam.max_denominator_power() <= 1;
                for (j, row) in fam.entries.iter().enumerate() {
                    for (i, e) in row.iter().enumerate() {
                        if i != j {
                            family &= e.denom_power == 0;
                        }
                    }
                }
                family &= fam
                    .specialize()
                    .map(|s| s.entries_equal(&t))
                    .unwrap_or(false);
            }
            _ => family = false,
        }
    }
    verdict(
        &mut out,
        "family entries carry one denominator power and specialize to the operator",
        family,
    );

    let mut oracle = true;
    let chi1 = unram_pow(2, 1, 4);
    let chi2 = SmoothCharacter::trivial(2);
    match (intertwiner_matrix(&chi1, &chi2, 2, 0), numeric_oracle(&chi1, &chi2, 2, 0, 40, 1)) {
        (Ok(t), Ok(report)) => {
            let err = oracle_deviation(&t, &report);
            oracle &= err < 1e-8;
            oracle &= err <= report.tail_bound * (1.0 + 1e-6) + 1e-10;
        }
        _ => oracle = false,
    }
    let rchi = SmoothCharacter::quadratic(3).multiply(&unram_pow(3, 1, 4));
    match (
        intertwiner_matrix(&rchi, &SmoothCharacter::trivial(3), 3, 1),
        numeric_oracle(&rchi, &SmoothCharacter::trivial(3), 3, 1, 12, 1),
    ) {
        (Ok(t), Ok(report)) => oracle &= oracle_deviation(&t, &report) < 1e-9,
        _ => oracle = false,
    }
    verdict(
        &mut out,
        "the numeric oracle agrees with the exact operator within its bound",
        oracle,
    );

    let mut equiv = true;
    let mut rng = ChaCha8Rng::seed_from_u64(40_871);
    for _ in 0..20 {
        let k0 = random_compact_element(&mut rng, 3, 1);
        equiv &= k_equivariance_check(&ram, &SmoothCharacter::quadratic(3), 3, 1, k0)
            .unwrap_or(false);
    }
    verdict(
        &mut out,
        "the operator commutes with random compact right translations",
        equiv,
    );

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for name in SUITE_NAMES {
            let verdicts = run_suite(name).expect("known suite");
            assert!(!verdicts.is_empty());
            for v in verdicts {
                assert!(v.pass, "{name}: {}", v.name);
            }
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("spectra").is_none());
    }

    #[test]
    fn random_pairs_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u64, 3, 5] {
            for _ in 0..10 {
                let (chi1, chi2) = random_character_pair(&mut rng, p, 2);
                assert!(crate::exactnum::right_of_axis_check(&chi1, &chi2));
                assert!(chi1.conductor_exponent() <= 2);
                assert!(num::integer::lcm(chi1.zeta_order(), chi2.zeta_order()) <= 24);
                assert!(crate::exactnum::weight_consistency(&chi1, 1));
                assert!(crate::exactnum::weight_consistency(&chi2, 1));
            }
        }
    }
}
