//! Restricted states, restricted generating functionals and the Schoenberg harness, decided
//! exactly on Gram matrices of a truncation window.
//!
//! A pass at half-degree `k` certifies positivity on the span of words of length `≤ k` only.

mod gram;
mod psd;
mod sampling;
mod schoenberg;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use gram::{gram, gram_basis, GramMatrix};
pub use psd::{check_hermitian, psd_exact, quadratic_form, Pivot, PsdVerdict};
pub use sampling::{sample_generating_functional, sample_restricted_state, SampleOptions};
pub use schoenberg::{schoenberg_suite, SchoenbergReport, TimeVerdict};

use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::universal_products::Moments;

/// First word `w` (up to `degree`) and component with `φ_k(w*) ≠ conj(φ_k(w))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianViolation {
    pub word: String,
    pub component: usize,
    pub value: Scalar,
    pub starred_value: Scalar,
}

pub fn hermitian_violation(phi: &dyn Moments, degree: usize) -> Result<Option<HermitianViolation>> {
    let algebra = phi.algebra();
    if !algebra.has_star() {
        return Err(Error::MissingStar);
    }
    for w in algebra.words_up_to(degree) {
        let starred = algebra.star_word(w.letters())?;
        if starred.as_slice() < w.letters() {
            continue;
        }
        let a = phi.moment(w.letters())?;
        let b = phi.moment(&starred)?;
        for (k, (x, y)) in a.iter().zip(&b).enumerate() {
            if *y != x.conj() {
                return Ok(Some(HermitianViolation {
                    word: algebra.render(w.letters()),
                    component: k + 1,
                    value: x.clone(),
                    starred_value: y.clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityKind {
    /// `𝟙φ(a*a) ≥ 0` on the unitization.
    RestrictedState,
    /// Hermitian and `ψ(a*a) ≥ 0` without unit.
    GeneratingFunctional,
}

/// PSD outcome for one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVerdict {
    pub component: usize,
    pub basis: Vec<String>,
    pub verdict: PsdVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub kind: PositivityKind,
    /// Words of length up to this are certified.
    pub half_degree: usize,
    pub hermitian: Option<HermitianViolation>,
    /// Empty when the hermitian check failed.
    pub components: Vec<ComponentVerdict>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.hermitian.is_none() && self.components.iter().all(|c| c.verdict.psd)
    }

    /// Human-readable first failure.
    pub fn failure(&self) -> Option<String> {
        if let Some(h) = &self.hermitian {
            return Some(format!(
                "not hermitian at word {} (component {}): {} vs {}",
                h.word, h.component, h.value, h.starred_value
            ));
        }
        self.components.iter().find(|c| !c.verdict.psd).map(|c| {
            let witness: Vec<String> = c.verdict.witness.iter().flatten().map(|s| format!("{s}")).collect();
            format!(
                "component {}: Gram matrix not PSD, witness ({}) gives {}",
                c.component,
                witness.join(", "),
                c.verdict.witness_value.clone().unwrap_or_default()
            )
        })
    }
}

fn positivity(phi: &dyn Moments, half_degree: usize, kind: PositivityKind) -> Result<PositivityReport> {
    let hermitian = hermitian_violation(phi, 2 * half_degree)?;
    let mut components = Vec::new();
    if hermitian.is_none() {
        for k in 1..=phi.components() {
            let g = gram(phi, k, half_degree, kind == PositivityKind::RestrictedState)?;
            let basis = g
                .basis
                .iter()
                .map(|w| if w.is_empty() { "1".into() } else { phi.algebra().render(w.letters()) })
                .collect();
            components.push(ComponentVerdict { component: k, basis, verdict: psd_exact(&g.entries)? });
        }
    }
    Ok(PositivityReport { kind, half_degree, hermitian, components })
}

/// Hermitian check, then `psd_exact` on the Gram matrix with unit, per component.
pub fn is_restricted_state(phi: &dyn Moments, half_degree: usize) -> Result<PositivityReport> {
    positivity(phi, half_degree, PositivityKind::RestrictedState)
}

/// Hermitian check, then `psd_exact` on the Gram matrix without unit, per component.
pub fn is_restricted_generating_functional(psi: &dyn Moments, half_degree: usize) -> Result<PositivityReport> {
    positivity(psi, half_degree, PositivityKind::GeneratingFunctional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faced_algebra::FacedAlgebra;
    use crate::universal_products::Functional;
    use alloc::vec;

    fn x() -> FacedAlgebra {
        FacedAlgebra::single_self_adjoint("x")
    }

    #[test]
    fn gram_examples() {
        let a = x();
        let zero = Functional::zero(&a, 1, 2);
        let g = gram(&zero, 1, 1, true).unwrap();
        assert_eq!(g.entries, vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::zero()]]);

        let mut psi = Functional::zero(&a, 1, 2);
        psi.set(a.parse_word("x x").unwrap(), vec![Scalar::one()]).unwrap();
        assert_eq!(gram(&psi, 1, 1, false).unwrap().entries, vec![vec![Scalar::one()]]);

        let mut phi = Functional::zero(&a, 1, 2);
        phi.set(a.parse_word("x").unwrap(), vec![Scalar::one()]).unwrap();
        let g = gram(&phi, 1, 1, true).unwrap();
        assert_eq!(g.entries, vec![vec![Scalar::one(), Scalar::one()], vec![Scalar::one(), Scalar::zero()]]);
    }

    #[test]
    fn state_and_generator_examples() {
        let a = x();
        assert!(is_restricted_state(&Functional::zero(&a, 1, 4), 2).unwrap().passed());

        let mut psi = Functional::zero(&a, 1, 4);
        psi.set(a.parse_word("x x").unwrap(), vec![Scalar::one()]).unwrap();
        assert!(is_restricted_generating_functional(&psi, 2).unwrap().passed());

        let mut phi = Functional::zero(&a, 1, 2);
        phi.set(a.parse_word("x").unwrap(), vec![Scalar::one()]).unwrap();
        let report = is_restricted_state(&phi, 1).unwrap();
        assert!(!report.passed());
        assert_eq!(report.components[0].verdict.witness_value, Some((-1).into()));
    }

    #[test]
    fn hermitian_failure_comes_first() {
        let a = FacedAlgebra::with_star(1, &[("y", 1), ("z", 1)], &[("y", "z")]).unwrap();
        let mut psi = Functional::zero(&a, 1, 2);
        psi.set(a.parse_word("y").unwrap(), vec![Scalar::one()]).unwrap();
        let report = is_restricted_generating_functional(&psi, 1).unwrap();
        assert!(report.hermitian.is_some());
        assert!(report.components.is_empty());
        assert!(!report.passed());
    }

    #[test]
    fn samples_are_generating_functionals() {
        let algebras = [x(), FacedAlgebra::with_star(1, &[("y", 1), ("z", 1)], &[("y", "z")]).unwrap()];
        for a in &algebras {
            for seed in 0..10 {
                let options = SampleOptions { components: 2, degree: 4, rep_dim: 1 + (seed as usize % 3), drift: true };
                let psi = sample_generating_functional(seed, a, options).unwrap();
                assert!(is_restricted_generating_functional(&psi, 2).unwrap().passed(), "seed {seed}");
                let phi = sample_restricted_state(seed, a, 1, 4, 2).unwrap();
                assert!(is_restricted_state(&phi, 2).unwrap().passed(), "seed {seed}");
            }
        }
    }

    #[test]
    fn rank_one_sample() {
        // π(x) = 1, v = 1 gives ψ(xⁿ) = 1
        let a = x();
        let mut psi = Functional::zero(&a, 1, 4);
        for w in a.words_up_to(4) {
            psi.set(w, vec![Scalar::one()]).unwrap();
        }
        assert!(is_restricted_generating_functional(&psi, 2).unwrap().passed());
        let mut drift = Functional::zero(&a, 1, 4);
        drift.set(a.parse_word("x").unwrap(), vec![Scalar::one()]).unwrap();
        assert!(is_restricted_generating_functional(&drift, 2).unwrap().passed());
    }
}
