//! Exact arithmetic foundation.
//!
//! - [`nf`]: towers of quotient-ring extensions of the rationals and their
//!   elements. All curve coefficients in the crate live here.
//! - [`poly`]: dense univariate polynomials over a number field.
//! - [`ratfunc`]: reduced rational functions with a monic denominator.
//! - [`snf`]: Smith normal form of integer matrices with unimodular
//!   transforms, plus the lattice helpers built on it.
//! - [`factor`]: squarefree decomposition over any tower and irreducible
//!   factorization over the rationals.

pub mod factor;
pub mod nf;
pub mod poly;
pub mod ratfunc;
pub mod snf;

pub use nf::{NFElement, NumberField, Rat};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use snf::{smith_normal_form, IntMat, SmithForm};
