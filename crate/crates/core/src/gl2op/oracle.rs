//! Floating-point cross-check of the exact operator: a truncated Riemann
//! sum of the defining integral over the unipotent radical, evaluated under
//! a chosen complex embedding of the coefficient field. Shallow valuations
//! are summed coset by coset through the exact Iwasawa machinery; deep
//! annuli collapse to unit-character sums, and that collapse is re-verified
//! on random samples as the sum runs.

use crate::error::{Error, Result};
use crate::exactnum::character::{right_of_axis_check, SmoothCharacter};
use crate::exactnum::cyclotomic::Cyclotomic;
use crate::gl2op::basis::{coset_basis, CosetBasis, PMat2};
use crate::gl2op::operator::{
    intertwiner_matrix, validate_level_pair, widen_common, OperatorMatrix,
};
use crate::ratio::{rat, rat_to_f64};
use num::complex::Complex64;
use num::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Result of one oracle run.
#[derive(Clone, Debug)]
pub struct OracleReport {
    /// matrix[j][i] approximates the embedded value of T(f_i) at rep j.
    pub matrix: Vec<Vec<Complex64>>,
    /// Proven bound on the dropped tail beyond the truncation depth.
    pub tail_bound: f64,
    /// Deepest summed valuation (annuli r = `truncation` included).
    pub truncation: i64,
    /// Galois index of the embedding zeta_n -> exp(2 pi i a / n).
    pub embedding: u64,
}

/// Cosets enumerated directly per row before switching to grouped annuli.
const DIRECT_COSET_CAP: u64 = 6000;

/// Riemann sum of the integral defining the operator, truncated at
/// valuation -r_max, under the embedding indexed by a. The weights must
/// put the pair strictly right of the convergence axis, which makes the
/// dropped tail geometrically small; the returned bound is computed from
/// the declared weights.
pub fn numeric_oracle(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
    r_max: i64,
    a: u64,
) -> Result<OracleReport> {
    validate_level_pair(chi1, chi2, p, m)?;
    if !right_of_axis_check(chi1, chi2) {
        return Err(Error::Precondition(
            "the pair is not strictly right of the convergence axis".into(),
        ));
    }
    if r_max < 1 {
        return Err(Error::Precondition("truncation depth must be >= 1".into()));
    }
    let basis = coset_basis(p, m)?;
    let size = basis.size();
    let (w1, w2, _n) = widen_common(chi1, chi2);
    let iota1 = |x: &Cyclotomic| x.complex_embedding(a);

    // Integration grid: cosets of P^m' inside P^-r, m' = max(m, 1).
    let mp = m.max(1);
    let precision = r_max.max(1) as u32 + m + 66;
    let vol = (p as f64).powi(-(mp as i32));

    // Depth of the direct (coset-by-coset) region: at least m so that the
    // grouped identity only ever applies to x with 1/x in P^m.
    let mut r0 = m as i64;
    while p.pow((r0 + 1) as u32 + mp) <= DIRECT_COSET_CAP {
        r0 += 1;
    }
    let r0 = r0.min(r_max);

    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); size]; size];

    // Direct region: every coset of P^m' in P^-r0, through exact Iwasawa.
    let weyl = PMat2::weyl(p, precision);
    let grid = p.pow(r0 as u32 + mp);
    let denom = p.pow(r0 as u32) as i64;
    for j in 0..size {
        let kj = basis.rep_matrix(j, precision);
        for t in 0..grid {
            let x = rat(t as i64, denom);
            let g = weyl.mul(&PMat2::upper_unipotent(p, &x, precision)).mul(&kj);
            let (i, b11, b22) = basis.factor_through(&g)?;
            let scalar =
                iota1(&w1.evaluate(&b11)?) * iota1(&w2.evaluate(&b22)?);
            matrix[j][i] += vol * scalar;
        }
    }

    // Deep annuli val(x) = -r, r0 < r <= r_max: here w u(x) kappa lies in
    // B * kappa * K(m), so each annulus contributes only on the diagonal,
    // with value q^-m' c^r (sum of the unit-restriction ratio over units
    // mod p^(r+m')). The ratio factors through max conductor digits.
    let c_embed = iota1(w1.value_at_uniformizer())
        / iota1(w2.value_at_uniformizer());
    let cd = w1.conductor_exponent().max(w2.conductor_exponent());
    let psi_sum: Complex64 = if cd == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        let modulus = p.pow(cd);
        (1..modulus)
            .filter(|u| u % p != 0)
            .map(|u| {
                let ub = BigUint::from(u);
                iota1(&w2.value_on_unit(&ub)) / iota1(&w1.value_on_unit(&ub))
            })
            .sum()
    };
    let mut rng =
        ChaCha8Rng::seed_from_u64(oracle_seed(p, m as u64, r_max as u64, a));
    for r in (r0 + 1)..=r_max {
        // Units mod p^(r+m') per retained class: p^(r+m'-max(cd,1))(p-1)
        // classes collapse onto each conductor-level class.
        let digits = r as u32 + mp;
        let multiplicity = if cd == 0 {
            // All units, trivial ratio.
            (p as f64 - 1.0) * (p as f64).powi(digits as i32 - 1)
        } else {
            (p as f64).powi(digits as i32 - cd as i32)
        };
        let annulus = vol * c_embed.powi(r as i32) * multiplicity * psi_sum;
        for (j, row) in matrix.iter_mut().enumerate() {
            row[j] += annulus;
        }

        // Spot-check the collapse on random cosets of the annulus.
        if r <= r0 + 3 || r == r_max {
            for _ in 0..3 {
                spot_check_annulus(
                    &w1, &w2, &basis, p, r, mp, precision, a, &mut rng,
                )?;
            }
        }
    }

    let gap = rat_to_f64(chi1.weight()) - rat_to_f64(chi2.weight());
    let rho = (p as f64).powf(1.0 - gap / 2.0);
    assert!(rho < 1.0);
    let tail_bound =
        (1.0 - 1.0 / p as f64) * rho.powi(r_max as i32 + 1) / (1.0 - rho);
    Ok(OracleReport { matrix, tail_bound, truncation: r_max, embedding: a })
}

/// Deterministic seed mixing for the spot-check sampler.
fn oracle_seed(p: u64, m: u64, r: u64, a: u64) -> u64 {
    p.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ m.wrapping_mul(0xbf58_476d_1ce4_e5b9)
        ^ r.wrapping_mul(0x94d0_49bb_1331_11eb)
        ^ a
}

/// Verify, by direct Iwasawa evaluation, that one random point of the
/// annulus val(x) = -r really produces the diagonal unit-character value
/// the grouped sum assumed.
#[allow(clippy::too_many_arguments)]
fn spot_check_annulus(
    w1: &SmoothCharacter,
    w2: &SmoothCharacter,
    basis: &CosetBasis,
    p: u64,
    r: i64,
    mp: u32,
    precision: u32,
    a: u64,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let digits = r as u32 + mp;
    // Keep the numerator in i64 range; huge annuli sample shallow digits.
    if p.checked_pow(digits).map_or(true, |v| v > i64::MAX as u64 / 2) {
        return Ok(());
    }
    let modulus = p.pow(digits);
    let mut u = rng.gen_range(1..modulus);
    while u % p == 0 {
        u = rng.gen_range(1..modulus);
    }
    let j = rng.gen_range(0..basis.size());
    let x = rat(u as i64, p.pow(r as u32) as i64);
    let weyl = PMat2::weyl(p, precision);
    let g = weyl
        .mul(&PMat2::upper_unipotent(p, &x, precision))
        .mul(&basis.rep_matrix(j, precision));
    let (i, b11, b22) = basis.factor_through(&g)?;
    if i != j {
        return Err(Error::Convergence(format!(
            "annulus r = {r}: expected a diagonal contribution, got {i} != {j}"
        )));
    }
    let iota = |x: &Cyclotomic| x.complex_embedding(a);
    let direct = iota(&w1.evaluate(&b11)?) * iota(&w2.evaluate(&b22)?);
    let ub = BigUint::from(u);
    let predicted = (iota(w1.value_at_uniformizer())
        / iota(w2.value_at_uniformizer()))
    .powi(r as i32)
        * (iota(&w2.value_on_unit(&ub)) / iota(&w1.value_on_unit(&ub)));
    if (direct - predicted).norm() > 1e-9 {
        return Err(Error::Convergence(format!(
            "annulus r = {r}: grouped value drifts from the direct one by {}",
            (direct - predicted).norm()
        )));
    }
    Ok(())
}

/// Largest relative deviation between the embedded exact matrix and an
/// oracle run.
pub fn oracle_deviation(exact: &OperatorMatrix, report: &OracleReport) -> f64 {
    let mut worst: f64 = 0.0;
    for (row_e, row_o) in exact.entries.iter().zip(&report.matrix) {
        for (e, o) in row_e.iter().zip(row_o) {
            let ev = e.complex_embedding(report.embedding);
            let rel = (ev - o).norm() / ev.norm().max(1.0);
            worst = worst.max(rel);
        }
    }
    worst
}

/// Observed per-step error-decay ratio of the oracle against the exact
/// operator over increasing truncation depths. Only depths whose error is
/// above the floating noise floor participate; fails if fewer than two
/// remain.
pub fn convergence_ratio(
    chi1: &SmoothCharacter,
    chi2: &SmoothCharacter,
    p: u64,
    m: u32,
    depths: &[i64],
    a: u64,
) -> Result<f64> {
    let exact = intertwiner_matrix(chi1, chi2, p, m)?;
    let mut usable: Vec<(i64, f64)> = Vec::new();
    for &r in depths {
        let report = numeric_oracle(chi1, chi2, p, m, r, a)?;
        let err = oracle_deviation(&exact, &report);
        if err > 1e-11 {
            usable.push((r, err));
        }
    }
    if usable.len() < 2 {
        return Err(Error::Convergence(
            "not enough depths with error above the noise floor".into(),
        ));
    }
    let (r_first, e_first) = usable[0];
    let (r_last, e_last) = usable[usable.len() - 1];
    if r_last <= r_first {
        return Err(Error::Convergence("depths must increase".into()));
    }
    Ok((e_last / e_first).powf(1.0 / (r_last - r_first) as f64))
}

/// The decay ratio the convergence theory predicts: q^(1 - gap/2).
pub fn predicted_ratio(chi1: &SmoothCharacter, chi2: &SmoothCharacter) -> f64 {
    let gap = rat_to_f64(chi1.weight()) - rat_to_f64(chi2.weight());
    (chi1.prime() as f64).powf(1.0 - gap / 2.0)
}
