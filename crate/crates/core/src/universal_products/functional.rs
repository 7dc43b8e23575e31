use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::coefficients::{Rational, Ring, Scalar};
use crate::error::{Error, Result};
use crate::faced_algebra::{FacedAlgebra, FacedHomomorphism, GenId, NCPolynomial, UnitalElement, Word};
use crate::random::{splitmix64, small_scalar_from_bits};

/// A `d`-valued linear functional, queried on the word basis.
///
/// Implemented by moment tables ([`Functional`]) and by lazily evaluated functionals such as
/// universal products of other functionals.
pub trait Moments<R: Ring = Scalar> {
    fn algebra(&self) -> &FacedAlgebra;

    fn components(&self) -> usize;

    /// Value vector on a nonempty word.
    fn moment(&self, letters: &[GenId]) -> Result<Vec<R>>;

    /// Truncation degree, `None` when every word can be evaluated.
    fn degree(&self) -> Option<usize> {
        None
    }

    /// Single component, 1-based.
    fn moment_component(&self, component: usize, letters: &[GenId]) -> Result<R> {
        let d = self.components();
        if component == 0 || component > d {
            return Err(Error::ComponentOutOfRange { component, d });
        }
        Ok(self.moment(letters)?.swap_remove(component - 1))
    }
}

impl<R: Ring, M: Moments<R> + ?Sized> Moments<R> for &M {
    fn algebra(&self) -> &FacedAlgebra {
        (**self).algebra()
    }
    fn components(&self) -> usize {
        (**self).components()
    }
    fn moment(&self, letters: &[GenId]) -> Result<Vec<R>> {
        (**self).moment(letters)
    }
    fn degree(&self) -> Option<usize> {
        (**self).degree()
    }
}

/// Linear extension of a functional to a polynomial.
pub fn evaluate<R: Ring, M: Moments<R> + ?Sized>(phi: &M, p: &NCPolynomial) -> Result<Vec<R>> {
    let mut acc = vec![R::zero(); phi.components()];
    for (w, c) in p.terms() {
        let c = R::from_scalar(c.clone());
        for (a, v) in acc.iter_mut().zip(phi.moment(w.letters())?) {
            *a = a.add(&c.mul(&v));
        }
    }
    Ok(acc)
}

/// The transpose `φ^tr(a₁,…,a_d) = Σ_k φ_k(a_k)`.
pub fn transpose<R: Ring, M: Moments<R> + ?Sized>(phi: &M, parts: &[NCPolynomial]) -> Result<R> {
    if parts.len() != phi.components() {
        return Err(Error::InvalidArgument(format!(
            "transpose expects {} parts, got {}",
            phi.components(),
            parts.len()
        )));
    }
    let mut total = R::zero();
    for (k, a) in parts.iter().enumerate() {
        total = total.add(&evaluate(phi, a)?[k]);
    }
    Ok(total)
}

/// Moment table up to a truncation degree. Words of length `≤ degree` missing from the table
/// have value zero; longer words are an error.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional<R: Ring = Scalar> {
    algebra: FacedAlgebra,
    d: usize,
    degree: usize,
    table: BTreeMap<Word, Vec<R>>,
}

impl<R: Ring> Functional<R> {
    pub fn zero(algebra: &FacedAlgebra, d: usize, degree: usize) -> Self {
        Functional { algebra: algebra.clone(), d, degree, table: BTreeMap::new() }
    }

    pub fn from_fn<F>(algebra: &FacedAlgebra, d: usize, degree: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Word) -> Result<Vec<R>>,
    {
        let mut phi = Functional::zero(algebra, d, degree);
        for w in algebra.words_up_to(degree) {
            let v = f(&w)?;
            phi.set(w, v)?;
        }
        Ok(phi)
    }

    /// Tabulates any functional on all words up to `degree`.
    pub fn materialize<M: Moments<R> + ?Sized>(source: &M, degree: usize) -> Result<Self> {
        Functional::from_fn(source.algebra(), source.components(), degree, |w| source.moment(w.letters()))
    }

    pub fn set(&mut self, word: Word, values: Vec<R>) -> Result<()> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.algebra.check_word(word.letters())?;
        if values.len() != self.d {
            return Err(Error::ComponentOutOfRange { component: values.len(), d: self.d });
        }
        if word.len() > self.degree {
            return Err(self.truncation(word.letters()));
        }
        if values.iter().all(R::is_zero) {
            self.table.remove(&word);
        } else {
            self.table.insert(word, values);
        }
        Ok(())
    }

    pub fn set_component(&mut self, word: Word, component: usize, value: R) -> Result<()> {
        if component == 0 || component > self.d {
            return Err(Error::ComponentOutOfRange { component, d: self.d });
        }
        let mut values = self.table.get(&word).cloned().unwrap_or_else(|| vec![R::zero(); self.d]);
        values[component - 1] = value;
        self.set(word, values)
    }

    pub fn truncation_degree(&self) -> usize {
        self.degree
    }

    /// Entries with a nonzero component.
    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Vec<R>)> {
        self.table.iter()
    }

    pub fn map<S: Ring, F: FnMut(&R) -> S>(&self, mut f: F) -> Functional<S> {
        let mut out = Functional::zero(&self.algebra, self.d, self.degree);
        for (w, v) in &self.table {
            out.set(w.clone(), v.iter().map(&mut f).collect()).expect("same shape");
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|v| v.mul(c))
    }

    /// Lowers the truncation degree.
    pub fn truncate(&self, degree: usize) -> Self {
        let mut out = Functional::zero(&self.algebra, self.d, degree.min(self.degree));
        for (w, v) in &self.table {
            if w.len() <= out.degree {
                out.table.insert(w.clone(), v.clone());
            }
        }
        out
    }

    fn truncation(&self, letters: &[GenId]) -> Error {
        Error::Truncation { word: self.algebra.render(letters), length: letters.len(), degree: self.degree }
    }
}

impl Functional<Scalar> {
    /// First `(word, component)` with `φ_k(w*) ≠ conj φ_k(w)`, if any.
    pub fn hermitian_violation(&self) -> Result<Option<(Word, usize)>> {
        for w in self.algebra.words_up_to(self.degree) {
            let ws = self.algebra.star_word(w.letters())?;
            let v = self.moment(w.letters())?;
            let vs = self.moment(&ws)?;
            if let Some(k) = v.iter().zip(&vs).position(|(a, b)| a.conj() != *b) {
                return Ok(Some((w, k + 1)));
            }
        }
        Ok(None)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map(|v| v.scale(r))
    }
}

impl<R: Ring> Moments<R> for Functional<R> {
    fn algebra(&self) -> &FacedAlgebra {
        &self.algebra
    }

    fn components(&self) -> usize {
        self.d
    }

    fn moment(&self, letters: &[GenId]) -> Result<Vec<R>> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if letters.len() > self.degree {
            return Err(self.truncation(letters));
        }
        self.algebra.check_word(letters)?;
        Ok(self.table.get(letters).cloned().unwrap_or_else(|| vec![R::zero(); self.d]))
    }

    fn degree(&self) -> Option<usize> {
        Some(self.degree)
    }
}

/// The unital extension `𝟙φ`: value `(1,…,1)` on the unit, `φ` on nonempty words.
pub struct Unitized<'a, M: ?Sized> {
    inner: &'a M,
}

pub fn unitize_functional<M: Moments<Scalar> + ?Sized>(phi: &M) -> Unitized<'_, M> {
    Unitized { inner: phi }
}

impl<M: Moments<Scalar> + ?Sized> Unitized<'_, M> {
    /// Accepts the empty word.
    pub fn moment(&self, letters: &[GenId]) -> Result<Vec<Scalar>> {
        if letters.is_empty() {
            Ok(vec![Scalar::one(); self.inner.components()])
        } else {
            self.inner.moment(letters)
        }
    }

    pub fn value(&self, x: &UnitalElement) -> Result<Vec<Scalar>> {
        let mut acc: Vec<Scalar> = (0..self.inner.components()).map(|_| x.unit.clone()).collect();
        for (a, v) in acc.iter_mut().zip(evaluate(self.inner, &x.body)?) {
            *a += &v;
        }
        Ok(acc)
    }
}

/// Pullback `φ ∘ j` of a functional along a faced homomorphism.
pub struct Pullback<'a, M: ?Sized> {
    phi: &'a M,
    hom: &'a FacedHomomorphism,
}

impl<'a, M: Moments<Scalar> + ?Sized> Pullback<'a, M> {
    pub fn new(phi: &'a M, hom: &'a FacedHomomorphism) -> Result<Self> {
        if hom.target() != phi.algebra() {
            return Err(Error::AlgebraMismatch("pullback target differs from functional domain".into()));
        }
        Ok(Pullback { phi, hom })
    }
}

impl<M: Moments<Scalar> + ?Sized> Moments<Scalar> for Pullback<'_, M> {
    fn algebra(&self) -> &FacedAlgebra {
        self.hom.source()
    }
    fn components(&self) -> usize {
        self.phi.components()
    }
    fn moment(&self, letters: &[GenId]) -> Result<Vec<Scalar>> {
        evaluate(self.phi, &self.hom.apply_word(letters)?)
    }
}

/// A functional with pseudo-random Gaussian-rational moments on every word, derived
/// deterministically from a seed. Has no truncation, which makes it convenient for law checks
/// under homomorphisms that raise word length.
#[derive(Clone, Debug)]
pub struct RandomFunctional {
    algebra: FacedAlgebra,
    d: usize,
    seed: u64,
}

impl RandomFunctional {
    pub fn new(algebra: &FacedAlgebra, d: usize, seed: u64) -> Self {
        RandomFunctional { algebra: algebra.clone(), d, seed }
    }
}

impl Moments<Scalar> for RandomFunctional {
    fn algebra(&self) -> &FacedAlgebra {
        &self.algebra
    }
    fn components(&self) -> usize {
        self.d
    }
    fn moment(&self, letters: &[GenId]) -> Result<Vec<Scalar>> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.algebra.check_word(letters)?;
        let mut h = splitmix64(self.seed ^ 0x9e37_79b9_7f4a_7c15);
        for &g in letters {
            h = splitmix64(h ^ u64::from(g).wrapping_add(0x51_7cc1_b727_220a));
        }
        Ok((0..self.d as u64).map(|k| small_scalar_from_bits(splitmix64(h ^ k))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitization_examples() {
        let a = FacedAlgebra::single_self_adjoint("x");
        let zero: Functional = Functional::zero(&a, 1, 3);
        let u = unitize_functional(&zero);
        assert_eq!(u.moment(&[]).unwrap(), vec![Scalar::one()]);

        let mut phi: Functional = Functional::zero(&a, 1, 3);
        phi.set(a.parse_word("x x").unwrap(), vec![Scalar::from(5)]).unwrap();
        let u = unitize_functional(&phi);
        assert_eq!(u.moment(&[0, 0]).unwrap(), phi.moment(&[0, 0]).unwrap());
        // 𝟙φ(1·w·1) = φ(w)
        let un = crate::faced_algebra::unitize(&a);
        let w = un.embed(NCPolynomial::word(a.parse_word("x x").unwrap()).unwrap());
        let sandwiched = un.multiply(&un.multiply(&un.unit(), &w), &un.unit());
        assert_eq!(u.value(&sandwiched).unwrap(), vec![Scalar::from(5)]);
    }

    #[test]
    fn truncation_is_loud() {
        let a = FacedAlgebra::single_self_adjoint("x");
        let phi: Functional = Functional::zero(&a, 1, 2);
        assert!(matches!(phi.moment(&[0, 0, 0]), Err(Error::Truncation { length: 3, degree: 2, .. })));
        assert_eq!(phi.moment(&[0, 0]).unwrap(), vec![Scalar::zero()]);
    }

    #[test]
    fn transpose_sums_components() {
        let a = FacedAlgebra::single_self_adjoint("x");
        let mut phi: Functional = Functional::zero(&a, 2, 2);
        phi.set(a.parse_word("x").unwrap(), vec![Scalar::from(1), Scalar::from(10)]).unwrap();
        let x = NCPolynomial::letter(0);
        let tr = transpose(&phi, &[x.clone(), x.scale(&Scalar::from(2))]).unwrap();
        assert_eq!(tr, Scalar::from(21));
    }

    #[test]
    fn random_functional_is_deterministic() {
        let a = FacedAlgebra::plain(1, &[("a", 1), ("b", 1)]).unwrap();
        let f = RandomFunctional::new(&a, 2, 42);
        assert_eq!(f.moment(&[0, 1, 1]).unwrap(), f.moment(&[0, 1, 1]).unwrap());
        assert_ne!(f.moment(&[0, 1, 1]).unwrap(), f.moment(&[1, 1, 0]).unwrap());
    }
}
