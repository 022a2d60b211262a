//! Exact computations with quantum matrix algebras, the Hopf algebra
//! `O_q(GL_t)`, its coactions on `O_q(M_{m,t}) ⊗ O_q(M_{t,n})` and the
//! localizations needed to state and check the fundamental theorems of
//! coinvariant theory on graded components.

pub mod qalgebra;
pub mod scalar;

pub use qalgebra::{Element, Family, MinorIndex, Monomial, Shape};
pub use scalar::{LaurentPoly, Rational, RatFunc, ScalarError};
pub mod comodule;
pub mod hopf;
pub mod localization;
pub mod setting;
pub mod tensor;
pub mod linalg;
pub mod cache;
pub mod theorems;
