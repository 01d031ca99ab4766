//! Exact arithmetic kernel: permutations, `Q(i)`, integer matrices with Smith
//! normal form, and polynomials over `Q(i)`.

pub mod gaussian;
pub mod matrix;
pub mod perm;
pub mod poly;

pub use gaussian::{GaussianRational, Rational};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use perm::{is_transitive, parse_cycles, Permutation};
pub use poly::Polynomial;
