//! Exact computations on arithmetic points of strata of abelian differentials.
//!
//! * [`exactmath`]: permutations, Gaussian rationals, integer Smith normal form, polynomials.
//! * [`origami`]: square-tiled surfaces as transitive permutation pairs.
//! * [`homology`]: cellular chains, relative homology bases and period vectors.
//! * [`covers`]: isogeny composition and branched covers of origamis.
//! * [`orbits`]: canonical forms and `SL(2,Z)`-orbits of origamis.
//! * [`strata`]: dimension formulas, strata enumeration, rank–degree scan, CM test.
//! * [`satake`]: projective orbit dimensions of highest-weight lines.
//! * [`superelliptic`]: exact divisors on curves `y^m = f(x)` over `Q(i)`.

pub mod covers;
pub mod error;
pub mod exactmath;
pub mod homology;
pub mod orbits;
pub mod origami;
pub mod satake;
pub mod strata;
pub mod superelliptic;

pub use error::{Error, Result};
pub use exactmath::{GaussianRational, IntMatrix, Permutation, Polynomial, Rational};
pub use orbits::{CanonicalOrigami, OrbitReport};
pub use origami::{Origami, Stratum};
