//! Exact convolution calculus for multivariate universal products on dual semigroups.
//!
//! Everything is decided over Gaussian rationals: products of `d`-valued functionals on
//! m-faced free algebras, convolution on dual semigroups, the symmetric-algebra (Lachs)
//! linearization with its natural transformation `σ`, convolution exponentials and exact
//! positive-semidefiniteness checks on Gram matrices.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coefficients;
pub mod dual_semigroup;
pub mod error;
pub mod exponentials;
pub mod faced_algebra;
pub mod lachs;
pub mod positivity;
pub mod random;
pub mod universal_products;
pub mod verdict;

pub use coefficients::{MomentSymbol, Polynomial, Rational, Ring, Scalar, SymbolicPolynomial, TimeVar};
pub use dual_semigroup::DualSemigroup;
pub use error::{Error, Result};
pub use faced_algebra::{FacedAlgebra, FacedHomomorphism, FreeProduct, GenId, NCPolynomial, Word};
pub use universal_products::{BuiltinProduct, Functional, Moments, UniversalProduct};
pub use verdict::LawVerdict;
