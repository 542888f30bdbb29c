//! Exact computations around local automorphisms of the Lie algebra sl_n.
//!
//! Everything is over the rationals with exact arithmetic:
//!
//! - [`mat`], [`poly`], [`smith`]: dense matrices, polynomials, invariant factors.
//! - [`sl`]: the canonical basis of sl_n, coordinates, bracket and trace form.
//! - [`auto`]: signed automorphisms `X -> ±A^-1 X^(T) A` and linear maps in coordinates.
//! - [`simwit`]: similarity decisions with checkable conjugating witnesses.
//! - [`local`]: pointwise certificates, refutations, and the sl_2 classifier.
//! - [`counterexample`]: the map `D_alpha`, which is conjugation on every basis
//!   element of sl_n (n >= 3) but not a local automorphism.

pub mod auto;
pub mod counterexample;
pub mod error;
pub mod local;
pub mod mat;
pub mod poly;
pub mod rational;
pub mod simwit;
pub mod sl;
pub mod smith;

pub use auto::{LinMap, MorphismKind, Sign, SignedAuto, Twist};
pub use error::{Error, Result};
pub use mat::Mat;
pub use poly::Poly;
pub use rational::Rational;
pub use sl::{BasisIndex, SlElement};
