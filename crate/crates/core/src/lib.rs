//! Exact Langlands-Shahidi data for maximal parabolic subgroups of split
//! classical p-adic groups, plus a fully explicit rank-one intertwining
//! operator for GL(2) computed over a cyclotomic coefficient field.
//!
//! Everything is exact: root systems and Weyl groups over the integers,
//! weights and pairings over the rationals, operator entries in Q(zeta_n),
//! p-adic matrix entries with capped-precision unit tracking. Floating
//! point appears only in the numeric cross-check oracle and in weight
//! sanity checks, and is clearly marked as such.

pub mod error;
pub mod ratio;

pub mod linalg;
pub mod rootsys;
pub mod parabolic;
pub mod lsdecomp;
pub mod exactnum;
pub mod gl2op;
pub mod verify;
pub mod cli;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
