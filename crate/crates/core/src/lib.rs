//! Exact graded Lie algebra computations: Grassmann and Clifford algebras, brackets of
//! multilinear maps, derivations, Schouten brackets, quadratic Lie algebras and their
//! cohomology.

pub mod cohomology;
pub mod derivation;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod multilinear;
pub mod quadratic;
pub mod random;
pub mod scalar;
pub mod schouten;

pub use error::{GlaError, Result};
pub use exterior::{ExteriorElement, GramMatrix};
pub use scalar::{Rational, Scalar};
