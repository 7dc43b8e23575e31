//! Convolution exponentials through the Lachs bialgebra, and the Trotter approximation.
//!
//! With a degree-preserving comultiplication, `f^{*k}` vanishes on basis elements of degree
//! below `k` whenever `f(∅) = 0`, so every exponential series is a finite sum. The coefficient
//! of `t^k` in `exp_⊙(tψ)(w)` is `D(ψ)^{*k}(w)/k!`; all exponentials are computed once as
//! polynomials in `t` and specialized by substitution.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::coefficients::{Monomial, Polynomial, Rational, Ring, Scalar, TimeVar};
use crate::dual_semigroup::DualSemigroup;
use crate::error::{Error, Result};
use crate::faced_algebra::{FacedAlgebra, Word};
use crate::lachs::{sym_degree, symword, Counit, Derivation, InducedBialgebra, LachsFunctional, SymWord};
use crate::universal_products::{convolve, convolve_power, BuiltinProduct, Functional, Moments, UniversalProduct};
use crate::verdict::LawVerdict;

/// Polynomial in formal time variables.
pub type TimePolynomial = Polynomial<TimeVar>;

pub const T: TimeVar = TimeVar(0);
pub const S: TimeVar = TimeVar(1);

/// Memoized convolution powers `f^{*k}` of a functional vanishing at the unit.
pub struct ConvolutionPowers<'a> {
    bialgebra: &'a InducedBialgebra<'a>,
    f: &'a dyn LachsFunctional,
    memo: RefCell<BTreeMap<(usize, SymWord), Scalar>>,
}

impl<'a> ConvolutionPowers<'a> {
    pub fn new(bialgebra: &'a InducedBialgebra<'a>, f: &'a dyn LachsFunctional) -> Result<Self> {
        if !bialgebra.semigroup().is_graded() {
            return Err(Error::NotGraded);
        }
        if !f.value(&Monomial::unit())?.is_zero() {
            return Err(Error::NonvanishingAtUnit);
        }
        Ok(ConvolutionPowers { bialgebra, f, memo: RefCell::new(BTreeMap::new()) })
    }

    /// `f^{*k}(s)`, with `f^{*0} = δ`.
    pub fn power(&self, k: usize, s: &SymWord) -> Result<Scalar> {
        if k == 0 {
            return Counit.value(s);
        }
        if k == 1 {
            return self.f.value(s);
        }
        // each factor absorbs at least one letter
        if k > sym_degree(s) {
            return Ok(Scalar::zero());
        }
        let key = (k, s.clone());
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let mut total = Scalar::zero();
        for (l, r, c) in self.bialgebra.delta(s)?.pairs() {
            if r.is_unit() || l.is_unit() {
                continue;
            }
            let fr = self.f.value(&r)?;
            if fr.is_zero() {
                continue;
            }
            let left = self.power(k - 1, &l)?;
            total += &(&(&c * &left) * &fr);
        }
        self.memo.borrow_mut().insert(key, total.clone());
        Ok(total)
    }

    /// `[f^{*0}(s)/0!, …, f^{*n}(s)/n!]` with `n = deg(s)`.
    pub fn series(&self, s: &SymWord) -> Result<Vec<Scalar>> {
        let mut factorial = Rational::one();
        let mut out = Vec::with_capacity(sym_degree(s) + 1);
        for k in 0..=sym_degree(s) {
            if k > 1 {
                factorial = &factorial * &Rational::from_integer(k as i64);
            }
            out.push(self.power(k, s)?.scale(&factorial.recip()?));
        }
        Ok(out)
    }
}

/// `exp(f)(s) = Σ_{k ≤ deg s} f^{*k}(s)/k!` on `L(B)`.
pub fn exp_on_lachs(bialgebra: &InducedBialgebra<'_>, f: &dyn LachsFunctional, s: &SymWord) -> Result<Scalar> {
    let powers = ConvolutionPowers::new(bialgebra, f)?;
    let mut total = Scalar::zero();
    for c in powers.series(s)? {
        total += &c;
    }
    Ok(total)
}

/// `exp_⊙(tψ)` on all words up to a degree, as polynomials in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpResult {
    pub product: alloc::string::String,
    pub degree: usize,
    pub table: Functional<TimePolynomial>,
}

impl ExpResult {
    pub fn algebra(&self) -> &FacedAlgebra {
        self.table.algebra()
    }

    pub fn components(&self) -> usize {
        self.table.components()
    }

    /// `exp_⊙(tψ)` at a concrete time.
    pub fn at(&self, t: &Scalar) -> Result<Functional> {
        let algebra = self.table.algebra().clone();
        Functional::from_fn(&algebra, self.components(), self.degree, |w| {
            self.table.moment(w.letters())?.iter().map(|p| p.substitute(|_| Ok(t.clone()))).collect()
        })
    }

    /// `exp_⊙(ψ)`.
    pub fn value(&self) -> Result<Functional> {
        self.at(&Scalar::one())
    }

    pub fn polynomial(&self, component: usize, w: &Word) -> Result<TimePolynomial> {
        self.table.moment_component(component, w.letters())
    }

    /// Coefficient of `t^k` as a functional.
    pub fn coefficient(&self, k: usize) -> Result<Functional> {
        let algebra = self.table.algebra().clone();
        let mono = Monomial::from_vars(alloc::vec![T; k]);
        Functional::from_fn(&algebra, self.components(), self.degree, |w| {
            Ok(self.table.moment(w.letters())?.iter().map(|p| p.coefficient(&mono)).collect())
        })
    }
}

/// `exp_⊙(tψ)` for `ψ` tabulated to at least `degree`.
pub fn exp_dual(product: &dyn UniversalProduct, semigroup: &DualSemigroup, psi: &dyn Moments, degree: usize) -> Result<ExpResult> {
    let d = psi.components();
    let bialgebra = InducedBialgebra::new(product, semigroup, d)?;
    let f = Derivation(psi);
    let powers = ConvolutionPowers::new(&bialgebra, &f)?;
    let table = Functional::from_fn(semigroup.algebra(), d, degree, |w| {
        (1..=d as u16)
            .map(|k| {
                let series = powers.series(&symword([(k, w.clone())]))?;
                Ok(time_polynomial(&series))
            })
            .collect()
    })?;
    Ok(ExpResult { product: product.name().into(), degree, table })
}

/// `exp_⊙(tψ)(w)` as a polynomial in `t`, one per component.
pub fn exp_poly_in_t(product: &dyn UniversalProduct, semigroup: &DualSemigroup, psi: &dyn Moments, w: &Word) -> Result<Vec<TimePolynomial>> {
    let d = psi.components();
    let bialgebra = InducedBialgebra::new(product, semigroup, d)?;
    let f = Derivation(psi);
    let powers = ConvolutionPowers::new(&bialgebra, &f)?;
    (1..=d as u16)
        .map(|k| Ok(time_polynomial(&powers.series(&symword([(k, w.clone())]))?)))
        .collect()
}

fn time_polynomial(coefficients: &[Scalar]) -> TimePolynomial {
    let mut p = TimePolynomial::zero();
    for (k, c) in coefficients.iter().enumerate() {
        p.add_term(Monomial::from_vars(alloc::vec![T; k]), c.clone());
    }
    p
}

/// `exp_⊙((s+t)ψ) = exp_⊙(sψ) ⋆ exp_⊙(tψ)` as polynomials in `s, t`.
pub fn check_semigroup_law(product: &dyn UniversalProduct, semigroup: &DualSemigroup, exp: &ExpResult) -> Result<LawVerdict> {
    let in_s = exp.table.map(|p| p.map_vars(|_| S));
    let s_plus_t = TimePolynomial::var(S).add(&TimePolynomial::var(T));
    let shifted = exp.table.map(|p| p.compose(|_| s_plus_t.clone()));
    let conv = convolve(product, semigroup, &in_s, &exp.table, Some(exp.degree))?;
    let mut verdict = LawVerdict::new("semigroup law");
    for w in exp.algebra().words_up_to(exp.degree) {
        let lhs = shifted.moment(w.letters())?;
        let rhs = conv.moment(w.letters())?;
        verdict.record(lhs == rhs, || {
            format!("{}: exp((s+t)ψ) gives {:?}, exp(sψ)⋆exp(tψ) gives {:?}", exp.algebra().render(w.letters()), lhs, rhs)
        });
    }
    Ok(verdict)
}

/// The `t¹` coefficient of `exp_⊙(tψ)` equals `ψ`, and the constant term vanishes.
pub fn check_derivative_identity(exp: &ExpResult, psi: &dyn Moments) -> Result<LawVerdict> {
    let linear = exp.coefficient(1)?;
    let constant = exp.coefficient(0)?;
    let mut verdict = LawVerdict::new("derivative at zero");
    for w in exp.algebra().words_up_to(exp.degree) {
        let got = linear.moment(w.letters())?;
        let expected = psi.moment(w.letters())?;
        let c0 = constant.moment(w.letters())?;
        verdict.record(got == expected && c0.iter().all(Scalar::is_zero), || {
            format!("{}: t-coefficient {:?} vs ψ {:?}", exp.algebra().render(w.letters()), got, expected)
        });
    }
    Ok(verdict)
}

/// One Trotter step count with its per-word deviation from `exp_⊙(ψ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrotterRun {
    pub n: usize,
    /// `exp_⊗(ψ/n)^{⋆n}`.
    pub approximant: Functional,
    /// Sum over components of `|Re| + |Im|` of the difference, per word.
    pub deviation: BTreeMap<Word, Rational>,
}

impl TrotterRun {
    pub fn deviation_at(&self, w: &Word) -> Rational {
        self.deviation.get(w).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Trotter approximants `exp_⊗(ψ/n)^{⋆_⊙ n}` for each `n` in `steps`, against the exact
/// `exp_⊙(ψ)`. Returns the exact exponential and one run per step count.
pub fn trotter(
    product: &dyn UniversalProduct,
    semigroup: &DualSemigroup,
    psi: &dyn Moments,
    steps: &[usize],
    degree: usize,
) -> Result<(Functional, Vec<TrotterRun>)> {
    let exact = exp_dual(product, semigroup, psi, degree)?.value()?;
    let tensor = exp_dual(&BuiltinProduct::Tensor, semigroup, psi, degree)?;
    let mut runs = Vec::with_capacity(steps.len());
    for &n in steps {
        if n == 0 {
            return Err(Error::InvalidArgument("Trotter step count must be positive".into()));
        }
        let step = tensor.at(&Scalar::from(Rational::new(1, n as i64)?))?;
        let approximant = convolve_power(product, semigroup, &step, n)?;
        let mut deviation = BTreeMap::new();
        for w in semigroup.algebra().words_up_to(degree) {
            let mut total = Rational::zero();
            for (a, b) in approximant.moment(w.letters())?.iter().zip(exact.moment(w.letters())?) {
                total = &total + &(a - &b).l1_norm();
            }
            deviation.insert(w, total);
        }
        runs.push(TrotterRun { n, approximant, deviation });
    }
    Ok((exact, runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lachs::derivation;
    use crate::universal_products::RandomFunctional;

    fn semicircle() -> (DualSemigroup, Functional) {
        let x = FacedAlgebra::single_self_adjoint("x");
        let ds = DualSemigroup::primitive(&x).unwrap();
        let mut psi = Functional::zero(&x, 1, 6);
        psi.set(x.parse_word("x x").unwrap(), alloc::vec![Scalar::one()]).unwrap();
        (ds, psi)
    }

    fn xpow(n: usize) -> Word {
        Word::new(alloc::vec![0; n]).unwrap()
    }

    #[test]
    fn semicircle_moments() {
        let (ds, psi) = semicircle();
        for (u, x4) in [(BuiltinProduct::Free, 2), (BuiltinProduct::Tensor, 3), (BuiltinProduct::Boolean, 1)] {
            let e = exp_dual(&u, &ds, &psi, 4).unwrap().value().unwrap();
            assert_eq!(e.moment(&[0, 0]).unwrap()[0], Scalar::one(), "{u}");
            assert_eq!(e.moment(xpow(4).letters()).unwrap()[0], Scalar::from(x4), "{u}");
            assert!(e.moment(&[0]).unwrap()[0].is_zero());
            assert!(e.moment(&[0, 0, 0]).unwrap()[0].is_zero());
        }
    }

    #[test]
    fn exp_on_lachs_examples() {
        let b = FacedAlgebra::with_star(1, &[("v", 1), ("w", 1)], &[]).unwrap();
        let ds = DualSemigroup::primitive(&b).unwrap();
        let psi = Functional::materialize(&RandomFunctional::new(&b, 1, 4), 3).unwrap();
        let ib = InducedBialgebra::new(&BuiltinProduct::Free, &ds, 1).unwrap();
        let f = derivation(&psi);
        assert_eq!(exp_on_lachs(&ib, &f, &Monomial::unit()).unwrap(), Scalar::one());
        let v = symword([(1, b.parse_word("v").unwrap())]);
        assert_eq!(exp_on_lachs(&ib, &f, &v).unwrap(), psi.moment(&[0]).unwrap()[0]);
        let vw = symword([(1, b.parse_word("v w").unwrap())]);
        let m = |w: &[u32]| psi.moment(w).unwrap().swap_remove(0);
        assert_eq!(exp_on_lachs(&ib, &f, &vw).unwrap(), &m(&[0, 1]) + &(&m(&[0]) * &m(&[1])));

        let poly = exp_poly_in_t(&BuiltinProduct::Free, &ds, &psi, &b.parse_word("v w").unwrap()).unwrap();
        let mut expected = TimePolynomial::zero();
        expected.add_term(Monomial::var(T), m(&[0, 1]));
        expected.add_term(Monomial::from_vars(alloc::vec![T, T]), &m(&[0]) * &m(&[1]));
        assert_eq!(poly[0], expected);
    }

    #[test]
    fn zero_generator() {
        let (ds, _) = semicircle();
        let zero = Functional::zero(ds.algebra(), 1, 4);
        for u in [BuiltinProduct::Free, BuiltinProduct::Monotone] {
            let e = exp_dual(&u, &ds, &zero, 4).unwrap().value().unwrap();
            assert_eq!(e, Functional::zero(ds.algebra(), 1, 4));
        }
    }

    #[test]
    fn ungraded_comultiplication_is_rejected() {
        let x = FacedAlgebra::single_self_adjoint("v");
        let rule = crate::faced_algebra::NCPolynomial::from_terms([
            (Word::letter(0), Scalar::one()),
            (Word::letter(1), Scalar::one()),
            (Word::new(alloc::vec![0, 1]).unwrap(), Scalar::one()),
        ])
        .unwrap();
        let ds = DualSemigroup::with_rule(&x, alloc::vec![rule]).unwrap();
        let psi = Functional::zero(&x, 1, 2);
        assert_eq!(exp_dual(&BuiltinProduct::Free, &ds, &psi, 2).unwrap_err(), Error::NotGraded);
    }

    #[test]
    fn semigroup_and_derivative_laws() {
        let b = FacedAlgebra::with_star(1, &[("v", 1), ("w", 1)], &[]).unwrap();
        let ds = DualSemigroup::primitive(&b).unwrap();
        for u in BuiltinProduct::ALL {
            let d = u.natural_components();
            let psi = Functional::materialize(&RandomFunctional::new(&b, d, 17), 3).unwrap();
            let e = exp_dual(&u, &ds, &psi, 3).unwrap();
            assert!(check_semigroup_law(&u, &ds, &e).unwrap().passed(), "{u}");
            assert!(check_derivative_identity(&e, &psi).unwrap().passed(), "{u}");
        }
    }

    #[test]
    fn trotter_tensor_is_exact_and_free_rate() {
        let (ds, psi) = semicircle();
        let (_, runs) = trotter(&BuiltinProduct::Tensor, &ds, &psi, &[1, 2, 3], 4).unwrap();
        for run in &runs {
            assert!(run.deviation.values().all(Rational::is_zero), "n={}", run.n);
        }
        let (_, runs) = trotter(&BuiltinProduct::Free, &ds, &psi, &[1, 2, 4, 8], 4).unwrap();
        for run in &runs {
            assert!(run.deviation_at(&xpow(1)).is_zero());
            assert!(run.deviation_at(&xpow(2)).is_zero());
            assert_eq!(run.deviation_at(&xpow(4)), Rational::new(1, run.n as i64).unwrap());
        }
    }
}
