//! Analysis of polynomial-like iterative functional equations
//!
//! An equation `a_N g^N(x) + ... + a_1 g(x) + a_0 x = 0` in an unknown
//! continuous self-map `g` of an interval is governed by the roots of its
//! characteristic polynomial `a_N r^N + ... + a_1 r + a_0`. This crate
//! provides:
//!
//! - [`poly`]: real polynomial arithmetic, reconstruction from roots and the
//!   dual (reversed) equation;
//! - [`roots`]: root extraction with multiplicities, conjugate pairing and
//!   modulus-gap predicates;
//! - [`recurrence`]: the associated linear recurrence, its closed-form
//!   general solution and (anti-)monotonicity of sequences;
//! - [`reduction`]: the order-reduction rules that replace an equation by an
//!   equivalent one of lower order;
//! - [`lab`]: numerical verification of concrete affine and power candidates;
//! - [`boros`]: the family `f^n(x) = f(x)^n / x^(n-1)` on subintervals of the
//!   positive half-line and the classification of its continuous solutions.
//!
//! Coefficients are always listed in ascending order, `a_0` first.

pub mod boros;
mod error;
pub mod interval;
pub mod lab;
pub mod poly;
pub mod recurrence;
pub mod reduction;
pub mod roots;

pub use error::{Error, Result};
pub use interval::Interval;
pub use poly::{IterativeEquation, Polynomial};
pub use roots::{RootClassification, RootEntry, RootSet, ToleranceConfig};

pub use num_complex::Complex64;
