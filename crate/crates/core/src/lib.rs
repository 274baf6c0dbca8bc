//! Exact-arithmetic toolkit for rational elliptic surfaces over the
//! projective line.
//!
//! The crate computes, with no floating point anywhere:
//!
//! - number-field towers and their arithmetic ([`algebra::nf`]),
//! - univariate and homogeneous polynomials, rational functions, and
//!   integer Smith normal form ([`algebra`]),
//! - Weierstrass models `y^2 = x^3 + f x + g` over the function field of
//!   the line, their discriminants, minimal models, and Kodaira fiber
//!   types ([`weierstrass`]),
//! - cyclic degree-p base changes ramified over 0 and infinity, together
//!   with the stability analysis of the fundamental line bundle
//!   ([`base_change`]),
//! - the classification of such stable pairs on rational and K3 surfaces
//!   ([`classification`]),
//! - Mordell-Weil ranks via Shioda-Tate, the group law on sections, the
//!   cyclic Galois action, and verification of explicit generator
//!   families ([`mordell_weil`]),
//! - first cohomology of a cyclic group acting on a finitely generated
//!   abelian group, which computes kernels of Weil-Chatelet restriction
//!   maps ([`cohomology`]),
//! - closed-form constraint calculators: Riemann-Hurwitz counts, rank
//!   jump bounds for semistable fibrations, and stability thresholds
//!   ([`bounds`]).

pub mod algebra;
pub mod base_change;
pub mod bounds;
pub mod classification;
pub mod cohomology;
pub mod error;
pub mod mordell_weil;
pub mod weierstrass;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
