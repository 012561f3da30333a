//! Exact number scaffolding: the cyclotomic coefficient field with its
//! Galois action, capped-precision p-adic scalars, smooth characters of the
//! multiplicative group of Q_p, abelian local L-factors, and the
//! right-of-the-unitary-axis gate.

pub mod character;
pub mod cyclotomic;
pub mod padic;

pub use character::{
    l_value, restrictions_agree, right_of_axis_check, weight_consistency, EulerFactor,
    SmoothCharacter,
};
pub use cyclotomic::Cyclotomic;
pub use padic::PAdicScalar;
