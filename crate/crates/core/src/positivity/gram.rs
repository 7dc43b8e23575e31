use alloc::vec::Vec;

use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::faced_algebra::{GenId, Word};
use crate::universal_products::{unitize_functional, Moments};

/// `G_ij = 𝟙φ_k(w_i* w_j)` over a graded-lex word basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    /// The empty word stands for the unit.
    pub basis: Vec<Word>,
    /// 1-based.
    pub component: usize,
    pub entries: Vec<Vec<Scalar>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of words up to `half_degree`, graded then lexicographic, optionally led by the unit.
pub fn gram_basis(phi: &dyn Moments, half_degree: usize, include_unit: bool) -> Vec<Word> {
    let mut basis = Vec::new();
    if include_unit {
        basis.push(Word::unit());
    }
    basis.extend(phi.algebra().words_up_to(half_degree));
    basis
}

pub fn gram(phi: &dyn Moments, component: usize, half_degree: usize, include_unit: bool) -> Result<GramMatrix> {
    let algebra = phi.algebra();
    if !algebra.has_star() {
        return Err(Error::MissingStar);
    }
    let d = phi.components();
    if component == 0 || component > d {
        return Err(Error::ComponentOutOfRange { component, d });
    }
    let basis = gram_basis(phi, half_degree, include_unit);
    let starred: Vec<Vec<GenId>> = basis.iter().map(|w| algebra.star_word(w.letters())).collect::<Result<_>>()?;
    let unital = unitize_functional(phi);
    let mut entries = Vec::with_capacity(basis.len());
    for si in &starred {
        let mut row = Vec::with_capacity(basis.len());
        for wj in &basis {
            let mut letters = si.clone();
            letters.extend_from_slice(wj.letters());
            row.push(unital.moment(&letters)?.swap_remove(component - 1));
        }
        entries.push(row);
    }
    Ok(GramMatrix { basis, component, entries })
}
