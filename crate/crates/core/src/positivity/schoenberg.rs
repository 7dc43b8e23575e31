use alloc::vec::Vec;

use crate::coefficients::{Rational, Scalar};
use crate::dual_semigroup::DualSemigroup;
use crate::error::{Error, Result};
use crate::exponentials::{check_derivative_identity, exp_dual};
use crate::universal_products::{Moments, UniversalProduct};
use crate::verdict::LawVerdict;

use super::{is_restricted_generating_functional, is_restricted_state, PositivityReport};

/// Restricted-state verdict of `exp_⊙(tψ)` at one time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeVerdict {
    pub t: Rational,
    pub report: PositivityReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchoenbergReport {
    pub product: alloc::string::String,
    pub degree: usize,
    /// Precondition on `ψ`; the remaining fields are empty when it fails.
    pub generator: PositivityReport,
    pub times: Vec<TimeVerdict>,
    /// Checked only when every time passes.
    pub derivative: Option<LawVerdict>,
}

impl SchoenbergReport {
    pub fn passed(&self) -> bool {
        self.generator.passed()
            && self.times.iter().all(|t| t.report.passed())
            && self.derivative.as_ref().is_none_or(LawVerdict::passed)
    }

    /// Words of length up to this are certified.
    pub fn certified_half_degree(&self) -> usize {
        self.degree / 2
    }
}

/// Checks that `exp_⊙(tψ)` is a restricted state at each `t`, at half-degree `⌊degree/2⌋`.
///
/// `exp_⊙(tψ)` is polynomial in `t`, so it is computed once and evaluated per time.
pub fn schoenberg_suite(
    product: &dyn UniversalProduct,
    semigroup: &DualSemigroup,
    psi: &dyn Moments,
    times: &[Rational],
    degree: usize,
) -> Result<SchoenbergReport> {
    if let Some(t) = times.iter().find(|t| !t.is_positive()) {
        return Err(Error::InvalidArgument(alloc::format!("time {t} is not positive")));
    }
    let half = degree / 2;
    let generator = is_restricted_generating_functional(psi, half)?;
    let mut report = SchoenbergReport { product: product.name().into(), degree, generator, times: Vec::new(), derivative: None };
    if !report.generator.passed() {
        return Ok(report);
    }
    let exp = exp_dual(product, semigroup, psi, degree)?;
    for t in times {
        let phi = exp.at(&Scalar::from(t.clone()))?;
        report.times.push(TimeVerdict { t: t.clone(), report: is_restricted_state(&phi, half)? });
    }
    if report.times.iter().all(|t| t.report.passed()) {
        report.derivative = Some(check_derivative_identity(&exp, psi)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faced_algebra::FacedAlgebra;
    use crate::positivity::{sample_generating_functional, SampleOptions};
    use crate::universal_products::{BuiltinProduct, Functional};
    use alloc::vec;

    fn times() -> Vec<Rational> {
        vec![Rational::new(1, 10).unwrap(), Rational::one(), Rational::from(10)]
    }

    #[test]
    fn semicircle_and_zero_pass() {
        let a = FacedAlgebra::single_self_adjoint("x");
        let d = DualSemigroup::primitive(&a).unwrap();
        let mut psi = Functional::zero(&a, 1, 4);
        psi.set(a.parse_word("x x").unwrap(), vec![Scalar::one()]).unwrap();
        let report = schoenberg_suite(&BuiltinProduct::Free, &d, &psi, &times(), 4).unwrap();
        assert!(report.passed());
        assert_eq!(report.times.len(), 3);
        assert!(report.derivative.unwrap().passed());

        for p in BuiltinProduct::ALL.iter().filter(|p| p.natural_components() == 1) {
            let zero = Functional::zero(&a, 1, 4);
            assert!(schoenberg_suite(p, &d, &zero, &times(), 4).unwrap().passed());
        }
    }

    #[test]
    fn non_hermitian_is_rejected_at_precondition() {
        let a = FacedAlgebra::with_star(1, &[("y", 1), ("z", 1)], &[("y", "z")]).unwrap();
        let d = DualSemigroup::primitive(&a).unwrap();
        let mut psi = Functional::zero(&a, 1, 4);
        psi.set(a.parse_word("y").unwrap(), vec![Scalar::one()]).unwrap();
        let report = schoenberg_suite(&BuiltinProduct::Free, &d, &psi, &times(), 4).unwrap();
        assert!(!report.passed());
        assert!(report.generator.hermitian.is_some());
        assert!(report.times.is_empty());
    }

    #[test]
    fn sampled_generators_pass_for_every_product() {
        let a = FacedAlgebra::single_self_adjoint("x");
        let d = DualSemigroup::primitive(&a).unwrap();
        for p in BuiltinProduct::ALL {
            for seed in 0..3 {
                let options = SampleOptions { components: p.natural_components(), degree: 4, rep_dim: 2, drift: true };
                let psi = sample_generating_functional(seed, &a, options).unwrap();
                let report = schoenberg_suite(&p, &d, &psi, &times(), 4).unwrap();
                assert!(report.passed(), "{} seed {seed}", p.as_str());
            }
        }
    }
}
