//! Convolution `φ₁ ⋆ φ₂ = (φ₁ ⊙ φ₂) ∘ Λ` of functionals on a dual semigroup.

use alloc::format;

use super::{evaluate, Functional, Moments, ProductFunctional, UniversalProduct};
use crate::coefficients::Ring;
use crate::dual_semigroup::DualSemigroup;
use crate::error::{Error, Result};
use crate::faced_algebra::{FacedAlgebra, GenId};

/// Lazily evaluated convolution.
pub struct Convolution<'a, R: Ring> {
    semigroup: &'a DualSemigroup,
    product: ProductFunctional<'a, R>,
}

impl<'a, R: Ring> Convolution<'a, R> {
    pub fn new(
        product: &'a dyn UniversalProduct,
        semigroup: &'a DualSemigroup,
        left: &'a dyn Moments<R>,
        right: &'a dyn Moments<R>,
    ) -> Result<Self> {
        for phi in [left, right] {
            if phi.algebra() != semigroup.algebra() {
                return Err(Error::AlgebraMismatch(format!(
                    "functional lives on {} generators, dual semigroup on {}",
                    phi.algebra().len(),
                    semigroup.algebra().len()
                )));
            }
        }
        Ok(Convolution { semigroup, product: ProductFunctional::new(product, left, right)? })
    }
}

impl<R: Ring> Moments<R> for Convolution<'_, R> {
    fn algebra(&self) -> &FacedAlgebra {
        self.semigroup.algebra()
    }

    fn components(&self) -> usize {
        self.product.components()
    }

    fn moment(&self, letters: &[GenId]) -> Result<alloc::vec::Vec<R>> {
        evaluate(&self.product, &self.semigroup.comultiply_word(letters)?)
    }

    fn degree(&self) -> Option<usize> {
        if self.semigroup.is_graded() {
            self.product.degree()
        } else {
            None
        }
    }
}

/// `φ₁ ⋆ φ₂` tabulated up to `degree`, by default the smaller input truncation.
pub fn convolve<R: Ring>(
    product: &dyn UniversalProduct,
    semigroup: &DualSemigroup,
    left: &dyn Moments<R>,
    right: &dyn Moments<R>,
    degree: Option<usize>,
) -> Result<Functional<R>> {
    let conv = Convolution::new(product, semigroup, left, right)?;
    let degree = degree
        .or_else(|| conv.degree())
        .ok_or_else(|| Error::InvalidArgument("convolution of untruncated functionals needs a degree".into()))?;
    Functional::materialize(&conv, degree)
}

/// `φ^{⋆n}` for `n ≥ 1`, by repeated right convolution.
pub fn convolve_power<R: Ring>(
    product: &dyn UniversalProduct,
    semigroup: &DualSemigroup,
    phi: &Functional<R>,
    n: usize,
) -> Result<Functional<R>> {
    if n == 0 {
        return Err(Error::InvalidArgument("convolution power needs n ≥ 1".into()));
    }
    let mut acc = phi.clone();
    for _ in 1..n {
        acc = convolve(product, semigroup, &acc, phi, None)?;
    }
    Ok(acc)
}
