//! Exact standard intertwining operator for principal series of GL(2)
//! over Q_p, on vectors fixed by a congruence subgroup: coset bases and
//! Iwasawa reduction, the operator matrix with its normalisation, the
//! one-parameter rational deformation in an unramified twist, and a
//! floating-point oracle with a proven truncation bound.

pub mod basis;
pub mod family;
pub mod operator;
pub mod oracle;

pub use basis::{coset_basis, iwasawa, CosetBasis, PMat2, RepShape, MAX_LEVEL};
pub use family::{rational_family, RationalEntry, RationalFamilyMatrix};
pub use operator::{
    intertwiner_matrix, k_equivariance_check, norm_character, normalized_matrix,
    right_translation_matrix, target_pair, InducedVector, OperatorMatrix,
};
pub use oracle::{
    convergence_ratio, numeric_oracle, oracle_deviation, predicted_ratio,
    OracleReport,
};
