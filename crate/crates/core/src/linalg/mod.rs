//! Exact linear algebra over prime fields and over the rationals.
//!
//! Everything here is elementary row reduction; the point is that it is
//! exact (no floats anywhere) and that subspaces carry a canonical form so
//! that equality and membership are cheap and unambiguous.

mod fp;
mod rational;
mod subspace;

pub use fp::{FpMatrix, PrimeField};
pub use rational::{primitive_integer_form, rat_dot, rat_kernel, rat_rref, Rational};
pub use subspace::{enumerate_all_subspaces, gaussian_binomial, subspace_count, Subspace};
