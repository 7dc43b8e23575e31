//! Exact scalars and commutative polynomials in formal moment symbols.
//!
//! Every identity the library checks is decided in these types, so nothing here rounds.

mod polynomial;
mod rational;
mod scalar;

use core::fmt;

pub use polynomial::{render_terms, substitute, Monomial, Polynomial};
pub use rational::Rational;
pub use scalar::{scalar_arith, Scalar, ScalarOp};

use crate::faced_algebra::Word;

/// Coefficient rings that functionals may take values in.
///
/// Implemented by [`Scalar`] and by [`Polynomial`], so moment tables can carry formal
/// parameters (a time variable, say) through products and convolutions.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_scalar(c: Scalar) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_scalar(c: Scalar) -> Self {
        c
    }
}

/// A formal moment `φ_factor,component(word)`, i.e. one sub-evaluation of a factor functional.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MomentSymbol {
    /// 1 or 2.
    pub factor: u8,
    /// 1-based component.
    pub component: u16,
    pub word: Word,
}

impl fmt::Display for MomentSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ{}", self.factor)?;
        write!(f, "_{}", self.component)?;
        write!(f, "({})", self.word)
    }
}

/// Polynomial in moment symbols, the output of symbolic product evaluation.
pub type SymbolicPolynomial = Polynomial<MomentSymbol>;

/// Adds or multiplies two symbolic polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

pub fn poly_arith<V: Ord + Clone>(p: &Polynomial<V>, q: &Polynomial<V>, op: PolyOp) -> Polynomial<V> {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Mul => p * q,
    }
}

/// Formal parameter used for polynomial-in-time exponentials (`index` 0 prints as `t`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TimeVar(pub u8);

impl fmt::Display for TimeVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "t"),
            1 => write!(f, "s"),
            n => write!(f, "t{n}"),
        }
    }
}
