//! Scalar arithmetic over rationals or floats, with small dense matrices on top.

pub mod combinatorics;
pub mod matrix;
pub mod orthogonal;
pub mod rational;
pub mod scalar;
pub mod svd;

pub use combinatorics::{binom, pochhammer, BinomialTable};
pub use matrix::{dot, norm2, Matrix};
pub use orthogonal::{gram_schmidt, gram_schmidt_exact, orthogonalize_exact};
pub use rational::{q, Rational};
pub use scalar::{tree_sum, Mode, Scalar};
pub use svd::{clamp_unit_interval, svd_singular_values};
