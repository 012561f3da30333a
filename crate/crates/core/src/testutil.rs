//! Test-only helpers: brute-force enumeration oracles kept independent of
//! the production algorithms they check.

use std::collections::BTreeSet;

use crate::rootsys::{RootDatum, Weight, WeylElement};

/// Enumerate the full Weyl group (or the parabolic generated by a subset of
/// the simple reflections) as a set of matrices, by breadth-first closure.
/// Only intended for small ranks.
pub fn enumerate_weyl_subgroup(datum: &RootDatum, generators: &[usize]) -> Vec<Vec<Vec<i64>>> {
    let dim = datum.dim();
    let gens: Vec<&WeylElement> = generators
        .iter()
        .map(|&i| datum.simple_reflection(i).unwrap())
        .collect();
    let identity = WeylElement::identity(dim);
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    seen.insert(identity.matrix().to_vec());
    let mut frontier = vec![identity.matrix().to_vec()];
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let product = mat_mul(&m, g.matrix());
            if seen.insert(product.clone()) {
                frontier.push(product);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn enumerate_weyl_group(datum: &RootDatum) -> Vec<Vec<Vec<i64>>> {
    let all: Vec<usize> = (0..datum.simple_roots().len()).collect();
    enumerate_weyl_subgroup(datum, &all)
}

/// Average of a weight over an explicitly enumerated group of matrices.
pub fn average_over(matrices: &[Vec<Vec<i64>>], w: &Weight) -> Weight {
    let mut acc = Weight::zero(w.dim());
    for m in matrices {
        acc = acc.add(&apply_matrix(m, w));
    }
    acc.scale(&crate::ratio::rat(1, matrices.len() as i64))
}

pub fn apply_matrix(m: &[Vec<i64>], w: &Weight) -> Weight {
    let coords = m
        .iter()
        .map(|row| {
            row.iter()
                .zip(&w.coords)
                .fold(num::traits::Zero::zero(), |acc: crate::ratio::Rat, (&e, c)| {
                    acc + c * crate::ratio::rint(e)
                })
        })
        .collect();
    Weight::new(coords)
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect())
        .collect()
}
