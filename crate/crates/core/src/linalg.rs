//! Small exact linear-algebra helpers: rational Gaussian elimination and
//! integer row Hermite normal form with lattice-membership testing.

use crate::ratio::Rat;
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};

/// Solve `A x = b` where `A` has the given columns (assumed linearly
/// independent). Returns `None` when the system is inconsistent.
pub fn solve_columns(columns: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let ncols = columns.len();
    let nrows = target.len();
    assert!(columns.iter().all(|c| c.len() == nrows));

    // Augmented matrix [A | b], row-reduced over the rationals.
    let mut m: Vec<Vec<Rat>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();

    let mut pivot_row = 0usize;
    let mut pivot_cols = Vec::new();
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, src);
        let inv = m[pivot_row][col].clone();
        for e in m[pivot_row].iter_mut() {
            *e = &*e / &inv;
        }
        for r in 0..nrows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=ncols {
                    let delta = &m[pivot_row][c] * &f;
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }

    // Inconsistent if a zero row has nonzero augment.
    for r in pivot_row..nrows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    // With independent columns every column is a pivot column.
    if pivot_cols.len() != ncols {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[r][ncols].clone();
    }
    Some(x)
}

/// A sublattice of (1/denominator) * Z^n, stored via the row Hermite normal
/// form of its generators after clearing denominators.
#[derive(Clone, Debug)]
pub struct IntLattice {
    denominator: BigInt,
    /// HNF rows of the scaled generators; each row's leading entry is positive.
    rows: Vec<Vec<BigInt>>,
    /// Pivot column of each HNF row, strictly increasing.
    pivots: Vec<usize>,
    ncols: usize,
}

impl IntLattice {
    /// Lattice spanned over Z by the given rational vectors.
    pub fn from_spanning_set(vectors: &[Vec<Rat>]) -> Self {
        assert!(!vectors.is_empty());
        let ncols = vectors[0].len();
        assert!(vectors.iter().all(|v| v.len() == ncols));
        let mut denominator = BigInt::from(1);
        for v in vectors {
            for e in v {
                denominator = num::integer::lcm(denominator.clone(), e.denom().clone());
            }
        }
        let scaled: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|e| {
                        let s = e * Rat::from_integer(denominator.clone());
                        debug_assert!(s.denom().is_one() || s.numer().is_zero());
                        s.to_integer()
                    })
                    .collect()
            })
            .collect();
        let (rows, pivots) = hermite_rows(scaled, ncols);
        IntLattice { denominator, rows, pivots, ncols }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Exact membership of a rational vector in the lattice.
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ncols);
        let scaled: Vec<Rat> = v
            .iter()
            .map(|e| e * Rat::from_integer(self.denominator.clone()))
            .collect();
        if !scaled.iter().all(|e| e.denom().is_one() || e.numer().is_zero()) {
            return false;
        }
        let mut w: Vec<BigInt> = scaled.iter().map(|e| e.to_integer()).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if w[piv].is_zero() {
                continue;
            }
            let (q, r) = num::integer::div_rem(w[piv].clone(), row[piv].clone());
            if !r.is_zero() {
                return false;
            }
            for c in 0..self.ncols {
                let delta = &row[c] * &q;
                w[c] -= delta;
            }
        }
        w.iter().all(|e| e.is_zero())
    }
}

/// Row Hermite normal form by integer row reduction: returns the nonzero
/// rows together with their pivot columns. Pivots are positive and entries
/// above each pivot are reduced into [0, pivot).
fn hermite_rows(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut col = 0usize;
    while col < ncols && !m.is_empty() {
        // Euclidean elimination within the current column.
        loop {
            let mut nz: Vec<usize> = (0..m.len()).filter(|&r| !m[r][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let r = nz[0];
                let row = m.remove(r);
                let row = if row[col].is_negative() { row.iter().map(|e| -e).collect() } else { row };
                out.push(row);
                pivots.push(col);
                break;
            }
            nz.sort_by_key(|&r| m[r][col].abs());
            let (small, big) = (nz[0], nz[1]);
            let q = &m[big][col] / &m[small][col];
            for c in col..ncols {
                let delta = &m[small][c] * &q;
                m[big][c] -= delta;
            }
        }
        col += 1;
    }
    // Reduce entries above each pivot to canonical representatives.
    for i in (0..out.len()).rev() {
        let piv = pivots[i];
        let lead = out[i][piv].clone();
        for j in 0..i {
            let q = num::integer::div_floor(out[j][piv].clone(), lead.clone());
            if !q.is_zero() {
                for c in 0..ncols {
                    let delta = &out[i][c] * &q;
                    out[j][c] -= delta;
                }
            }
        }
    }
    (out, pivots)
}
