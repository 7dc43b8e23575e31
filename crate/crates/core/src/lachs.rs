//! The symmetric-algebra linearization `L(A) = S(A^{⊕d})`.
//!
//! A basis element ([`SymWord`]) is a multiset of pairs `(component, word)`. Elements of
//! `L(A₁) ⊗ L(A₂)` are stored as commutative polynomials in side-tagged pairs, which is the
//! same algebra since tensor products of polynomial algebras are polynomial algebras on the
//! disjoint union of variables.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::coefficients::{Monomial, Polynomial, Scalar, SymbolicPolynomial};
use crate::dual_semigroup::DualSemigroup;
use crate::error::{Error, Result};
use crate::faced_algebra::{FacedAlgebra, FacedHomomorphism, FreeProduct, GenId, NCPolynomial, Word};
use crate::universal_products::{eval_product_symbolic, Moments, UniversalProduct};
use crate::verdict::LawVerdict;

/// One generator `(k, w)` of `S(A^{⊕d})`: the word `w` in the `k`-th summand.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LachsLetter {
    /// 1-based.
    pub component: u16,
    pub word: Word,
}

impl LachsLetter {
    pub fn new(component: u16, word: Word) -> Self {
        LachsLetter { component, word }
    }
}

impl fmt::Display for LachsLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.component, self.word)
    }
}

/// Basis element of `L(A)`; the empty multiset is the unit.
pub type SymWord = Monomial<LachsLetter>;

/// Element of `L(A)`.
pub type SymPolynomial = Polynomial<LachsLetter>;

pub fn sym_degree(s: &SymWord) -> usize {
    s.vars().iter().map(|l| l.word.len()).sum()
}

pub fn symword(letters: impl IntoIterator<Item = (u16, Word)>) -> SymWord {
    Monomial::from_vars(letters.into_iter().map(|(k, w)| LachsLetter::new(k, w)).collect())
}

/// A pair letter tagged with its tensor side (1-based).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sided {
    pub side: u8,
    pub letter: LachsLetter,
}

impl fmt::Display for Sided {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.side, self.letter)
    }
}

/// Element of an iterated tensor power `L(A₁) ⊗ … ⊗ L(A_n)`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LachsTensor(pub Polynomial<Sided>);

impl LachsTensor {
    pub fn zero() -> Self {
        LachsTensor(Polynomial::zero())
    }

    pub fn one() -> Self {
        LachsTensor(Polynomial::one())
    }

    /// `c · (s₁ ⊗ … ⊗ s_n)`.
    pub fn basis(parts: &[&SymWord], c: Scalar) -> Self {
        let vars = parts
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.vars().iter().map(move |l| Sided { side: i as u8 + 1, letter: l.clone() }))
            .collect();
        LachsTensor(Polynomial::term(c, Monomial::from_vars(vars)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_assign(&mut self, other: &LachsTensor) {
        self.0.add_assign_ref(&other.0);
    }

    pub fn mul(&self, other: &LachsTensor) -> LachsTensor {
        LachsTensor(self.0.mul_ref(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> LachsTensor {
        LachsTensor(self.0.scale(c))
    }

    /// Terms split into `sides` tensor factors.
    pub fn terms(&self, sides: usize) -> Vec<(Vec<SymWord>, Scalar)> {
        self.0
            .terms()
            .map(|(m, c)| {
                let mut parts = alloc::vec![Vec::new(); sides];
                for v in m.vars() {
                    parts[v.side as usize - 1].push(v.letter.clone());
                }
                (parts.into_iter().map(Monomial::from_vars).collect(), c.clone())
            })
            .collect()
    }

    /// Terms of a binary tensor as `(left, right, coefficient)`.
    pub fn pairs(&self) -> Vec<(SymWord, SymWord, Scalar)> {
        self.terms(2)
            .into_iter()
            .map(|(mut parts, c)| {
                let r = parts.pop().expect("two sides");
                let l = parts.pop().expect("two sides");
                (l, r, c)
            })
            .collect()
    }

    /// `Σ c · f(left) · g(right)`.
    pub fn pair_with(&self, f: &dyn LachsFunctional, g: &dyn LachsFunctional) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (l, r, c) in self.pairs() {
            let fl = f.value(&l)?;
            if fl.is_zero() {
                continue;
            }
            total += &(&(&c * &fl) * &g.value(&r)?);
        }
        Ok(total)
    }
}

/// Renders a basis element with generator names, pairs joined by `·`; `∅` is the unit.
pub fn render_symword(algebra: &FacedAlgebra, s: &SymWord, d: usize) -> String {
    if s.is_unit() {
        return "∅".into();
    }
    let parts: Vec<String> = s
        .vars()
        .iter()
        .map(|l| {
            let w = algebra.render(l.word.letters());
            if d > 1 {
                format!("[{}]{}", l.component, w)
            } else {
                w
            }
        })
        .collect();
    if parts.len() == 1 {
        parts.into_iter().next().unwrap_or_default()
    } else {
        format!("({})", parts.join("·"))
    }
}

/// Renders a binary tensor, e.g. `a1 a2 ⊗ (b1·b2) - (a1·a2) ⊗ (b1·b2)`, negative terms last.
pub fn render_tensor(left: &FacedAlgebra, right: &FacedAlgebra, t: &LachsTensor, d: usize) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut terms = t.pairs();
    // positive terms first, otherwise canonical order
    terms.sort_by_key(|(_, _, c)| c.is_real() && c.re.is_negative());
    for (i, (l, r, c)) in terms.into_iter().enumerate() {
        let body = format!("{} ⊗ {}", render_symword(left, &l, d), render_symword(right, &r, d));
        let (negative, magnitude) = if c.is_real() && c.re.is_negative() { (true, -&c) } else { (false, c) };
        let coeff = if magnitude.is_one() { String::new() } else { format!("({magnitude}) ") };
        match (i, negative) {
            (0, false) => out.push_str(&format!("{coeff}{body}")),
            (0, true) => out.push_str(&format!("-{coeff}{body}")),
            (_, false) => out.push_str(&format!(" + {coeff}{body}")),
            (_, true) => out.push_str(&format!(" - {coeff}{body}")),
        }
    }
    out
}

/// A linear functional on `L(A)`, queried on the basis.
pub trait LachsFunctional {
    fn value(&self, s: &SymWord) -> Result<Scalar>;
}

impl<F: LachsFunctional + ?Sized> LachsFunctional for &F {
    fn value(&self, s: &SymWord) -> Result<Scalar> {
        (**self).value(s)
    }
}

/// `S(f)`: the character extending `f`.
pub struct Character<'a>(pub &'a dyn Moments);

/// `D(f)`: the `S(0)`-derivation extending `f`.
pub struct Derivation<'a>(pub &'a dyn Moments);

/// `δ = S(0)`: 1 on the unit, 0 elsewhere.
pub struct Counit;

pub fn character(f: &dyn Moments) -> Character<'_> {
    Character(f)
}

pub fn derivation(f: &dyn Moments) -> Derivation<'_> {
    Derivation(f)
}

impl LachsFunctional for Character<'_> {
    fn value(&self, s: &SymWord) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for l in s.vars() {
            acc = &acc * &self.0.moment_component(l.component as usize, l.word.letters())?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

impl LachsFunctional for Derivation<'_> {
    fn value(&self, s: &SymWord) -> Result<Scalar> {
        match s.vars() {
            [l] => self.0.moment_component(l.component as usize, l.word.letters()),
            _ => Ok(Scalar::zero()),
        }
    }
}

impl LachsFunctional for Counit {
    fn value(&self, s: &SymWord) -> Result<Scalar> {
        Ok(if s.is_unit() { Scalar::one() } else { Scalar::zero() })
    }
}

/// Maps each monomial of a symbolic polynomial to the tensor of its factor-1 and factor-2
/// moment symbols.
pub fn symbols_to_tensor(p: &SymbolicPolynomial) -> LachsTensor {
    LachsTensor(p.map_vars(|s| Sided {
        side: s.factor,
        letter: LachsLetter::new(s.component, s.word.clone()),
    }))
}

/// `σ(s)` for a basis element over `A₁ ⊔ A₂`: the product of the coefficient polynomials of
/// its pairs, read as a tensor.
pub fn extract_sigma(product: &dyn UniversalProduct, free: &FreeProduct, d: usize, s: &SymWord) -> Result<LachsTensor> {
    let mut acc: SymbolicPolynomial = Polynomial::one();
    for l in s.vars() {
        let k = l.component as usize;
        if k == 0 || k > d {
            return Err(Error::ComponentOutOfRange { component: k, d });
        }
        let polys = eval_product_symbolic(product, free, d, &l.word)?;
        acc = acc.mul_ref(&polys[k - 1]);
    }
    Ok(symbols_to_tensor(&acc))
}

/// Linear data `σ: L(A₁ ⊔ A₂) → L(A₁) ⊗ L(A₂)` on the basis.
pub trait SigmaMap {
    fn sigma(&self, s: &SymWord) -> Result<LachsTensor>;
}

/// `σ` of a universal product, computed pairwise with a per-pair cache.
pub struct ProductSigma<'a> {
    product: &'a dyn UniversalProduct,
    free: FreeProduct,
    d: usize,
    cache: RefCell<BTreeMap<LachsLetter, Rc<LachsTensor>>>,
}

impl<'a> ProductSigma<'a> {
    pub fn new(product: &'a dyn UniversalProduct, free: FreeProduct, d: usize) -> Result<Self> {
        let m = free.algebra().faces();
        if !product.applicable(m, d) {
            return Err(Error::NotApplicable { name: product.name().into(), m, d });
        }
        Ok(ProductSigma { product, free, d, cache: RefCell::new(BTreeMap::new()) })
    }

    pub fn free_product(&self) -> &FreeProduct {
        &self.free
    }

    fn letter(&self, l: &LachsLetter) -> Result<Rc<LachsTensor>> {
        if let Some(t) = self.cache.borrow().get(l) {
            return Ok(t.clone());
        }
        let t = Rc::new(extract_sigma(self.product, &self.free, self.d, &Monomial::var(l.clone()))?);
        self.cache.borrow_mut().insert(l.clone(), t.clone());
        Ok(t)
    }
}

impl SigmaMap for ProductSigma<'_> {
    fn sigma(&self, s: &SymWord) -> Result<LachsTensor> {
        let mut acc = LachsTensor::one();
        for l in s.vars() {
            acc = acc.mul(&*self.letter(l)?);
        }
        Ok(acc)
    }
}

/// The tensor-case shortcut `σ̂`: `b@1 ↦ b ⊗ 1`, `b@2 ↦ 1 ⊗ b`, applied to each pair through the
/// ordered projection onto legs.
pub fn tensor_sigma_hat(free: &FreeProduct, s: &SymWord) -> LachsTensor {
    let mut acc = LachsTensor::one();
    for l in s.vars() {
        let mut parts: [Vec<GenId>; 2] = [Vec::new(), Vec::new()];
        for &g in l.word.letters() {
            let (leg, local) = free.leg(g);
            parts[leg as usize - 1].push(local);
        }
        let side = |i: usize| -> SymWord {
            if parts[i].is_empty() {
                Monomial::unit()
            } else {
                Monomial::var(LachsLetter::new(l.component, Word::from(parts[i].as_slice())))
            }
        };
        acc = acc.mul(&LachsTensor::basis(&[&side(0), &side(1)], Scalar::one()));
    }
    acc
}

/// `L(j)`: applies `j` to every word of a basis element, expanded multilinearly.
pub fn lachs_map(hom: &FacedHomomorphism, s: &SymWord) -> Result<SymPolynomial> {
    let mut acc = SymPolynomial::one();
    for l in s.vars() {
        acc = acc.mul_ref(&lift(&hom.apply_word(l.word.letters())?, l.component));
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `Σ c·u ↦ Σ c·(k, u)`.
pub fn lift(p: &NCPolynomial, component: u16) -> SymPolynomial {
    let mut out = SymPolynomial::zero();
    for (w, c) in p.terms() {
        out.add_term(Monomial::var(LachsLetter::new(component, w.clone())), c.clone());
    }
    out
}

/// All basis elements of `L(A)` of degree `≤ degree`, unit first, in a fixed order.
pub fn symwords_up_to(algebra: &FacedAlgebra, d: usize, degree: usize) -> Vec<SymWord> {
    let letters: Vec<LachsLetter> = algebra
        .words_up_to(degree)
        .into_iter()
        .flat_map(|w| (1..=d as u16).map(move |k| LachsLetter::new(k, w.clone())))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_multisets(&letters, 0, degree, &mut current, &mut out);
    out.sort_by(|a, b| sym_degree(a).cmp(&sym_degree(b)).then_with(|| a.cmp(b)));
    out
}

fn extend_multisets(letters: &[LachsLetter], start: usize, budget: usize, current: &mut Vec<LachsLetter>, out: &mut Vec<SymWord>) {
    out.push(Monomial::from_vars(current.clone()));
    for i in start..letters.len() {
        let len = letters[i].word.len();
        if len <= budget {
            current.push(letters[i].clone());
            extend_multisets(letters, i, budget - len, current, out);
            current.pop();
        }
    }
}

/// The commutative bialgebra `(L(B), σ_{B,B} ∘ L(Λ), δ)` with `Δ` computed lazily.
pub struct InducedBialgebra<'a> {
    semigroup: &'a DualSemigroup,
    d: usize,
    sigma: Box<dyn SigmaMap + 'a>,
    delta_cache: RefCell<BTreeMap<SymWord, Rc<LachsTensor>>>,
    comul_cache: RefCell<BTreeMap<Word, SymPolynomial>>,
}

impl<'a> InducedBialgebra<'a> {
    pub fn new(product: &'a dyn UniversalProduct, semigroup: &'a DualSemigroup, d: usize) -> Result<Self> {
        let sigma = ProductSigma::new(product, semigroup.pair().clone(), d)?;
        Ok(InducedBialgebra::with_sigma(semigroup, d, Box::new(sigma)))
    }

    /// Uses arbitrary `σ` data; this is how corrupted products are exercised.
    pub fn with_sigma(semigroup: &'a DualSemigroup, d: usize, sigma: Box<dyn SigmaMap + 'a>) -> Self {
        InducedBialgebra {
            semigroup,
            d,
            sigma,
            delta_cache: RefCell::new(BTreeMap::new()),
            comul_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn semigroup(&self) -> &DualSemigroup {
        self.semigroup
    }

    pub fn components(&self) -> usize {
        self.d
    }

    /// `L(Λ)(s)` as a combination of basis elements over `B ⊔ B`.
    pub fn lachs_comultiply(&self, s: &SymWord) -> Result<SymPolynomial> {
        let mut acc = SymPolynomial::one();
        for l in s.vars() {
            let lifted = {
                let cached = self.comul_cache.borrow().get(&l.word).cloned();
                match cached {
                    Some(p) => p,
                    None => {
                        let p = lift(&self.semigroup.comultiply_word(l.word.letters())?, 1);
                        self.comul_cache.borrow_mut().insert(l.word.clone(), p.clone());
                        p
                    }
                }
            };
            let relabeled = lifted.map_vars(|x| LachsLetter::new(l.component, x.word.clone()));
            acc = acc.mul_ref(&relabeled);
        }
        Ok(acc)
    }

    /// `Δ(s) = σ(L(Λ)(s))`.
    pub fn delta(&self, s: &SymWord) -> Result<Rc<LachsTensor>> {
        if let Some(t) = self.delta_cache.borrow().get(s) {
            return Ok(t.clone());
        }
        for l in s.vars() {
            if l.component == 0 || l.component as usize > self.d {
                return Err(Error::ComponentOutOfRange { component: l.component as usize, d: self.d });
            }
        }
        let mut out = LachsTensor::zero();
        for (m, c) in self.lachs_comultiply(s)?.terms() {
            out.add_assign(&self.sigma.sigma(m)?.scale(c));
        }
        let out = Rc::new(out);
        self.delta_cache.borrow_mut().insert(s.clone(), out.clone());
        Ok(out)
    }

    /// `(f * g)(s) = (f ⊗ g)Δ(s)`.
    pub fn convolve_at(&self, f: &dyn LachsFunctional, g: &dyn LachsFunctional, s: &SymWord) -> Result<Scalar> {
        self.delta(s)?.pair_with(f, g)
    }

    /// Counit law `(δ ⊗ id)Δ = id = (id ⊗ δ)Δ` and coassociativity of `Δ` on every basis
    /// element up to `degree`.
    pub fn check_laws(&self, degree: usize) -> Result<[LawVerdict; 3]> {
        let algebra = self.semigroup.algebra();
        let mut counit = LawVerdict::new("Δ counit");
        let mut coassoc = LawVerdict::new("Δ coassociativity");
        let mut graded = LawVerdict::new("Δ degree preservation");
        for s in symwords_up_to(algebra, self.d, degree) {
            let delta = self.delta(&s)?;
            let mut left = LachsTensor::zero();
            let mut right = LachsTensor::zero();
            let mut lhs = LachsTensor::zero();
            let mut rhs = LachsTensor::zero();
            let mut degrees_ok = true;
            for (l, r, c) in delta.pairs() {
                if l.is_unit() {
                    right.add_assign(&LachsTensor::basis(&[&r], c.clone()));
                }
                if r.is_unit() {
                    left.add_assign(&LachsTensor::basis(&[&l], c.clone()));
                }
                if sym_degree(&l) + sym_degree(&r) != sym_degree(&s) {
                    degrees_ok = false;
                }
                for (ll, lr, c2) in self.delta(&l)?.pairs() {
                    lhs.add_assign(&LachsTensor::basis(&[&ll, &lr, &r], &c * &c2));
                }
                for (rl, rr, c2) in self.delta(&r)?.pairs() {
                    rhs.add_assign(&LachsTensor::basis(&[&l, &rl, &rr], &c * &c2));
                }
            }
            let id = LachsTensor::basis(&[&s], Scalar::one());
            let name = || render_symword(algebra, &s, self.d);
            counit.record(left == id && right == id, name);
            coassoc.record(lhs == rhs, name);
            graded.record(degrees_ok, name);
        }
        Ok([counit, coassoc, graded])
    }
}

/// Lazily evaluated `f * g` on `L(B)`.
pub struct CoalgConvolution<'a> {
    bialgebra: &'a InducedBialgebra<'a>,
    f: &'a dyn LachsFunctional,
    g: &'a dyn LachsFunctional,
    memo: RefCell<BTreeMap<SymWord, Scalar>>,
}

pub fn coalg_convolve<'a>(
    bialgebra: &'a InducedBialgebra<'a>,
    f: &'a dyn LachsFunctional,
    g: &'a dyn LachsFunctional,
) -> CoalgConvolution<'a> {
    CoalgConvolution { bialgebra, f, g, memo: RefCell::new(BTreeMap::new()) }
}

impl LachsFunctional for CoalgConvolution<'_> {
    fn value(&self, s: &SymWord) -> Result<Scalar> {
        if let Some(v) = self.memo.borrow().get(s) {
            return Ok(v.clone());
        }
        let v = self.bialgebra.convolve_at(self.f, self.g, s)?;
        self.memo.borrow_mut().insert(s.clone(), v.clone());
        Ok(v)
    }
}

/// `S(φ₁ ⋆ φ₂) = S(φ₁) * S(φ₂)` exactly on every basis element up to `degree`.
pub fn check_intertwine(
    bialgebra: &InducedBialgebra<'_>,
    convolution: &dyn Moments,
    phi1: &dyn Moments,
    phi2: &dyn Moments,
    degree: usize,
) -> Result<LawVerdict> {
    let algebra = bialgebra.semigroup().algebra();
    let (c1, c2, c12) = (Character(phi1), Character(phi2), Character(convolution));
    let mut verdict = LawVerdict::new("intertwining");
    for s in symwords_up_to(algebra, bialgebra.components(), degree) {
        let lhs = c12.value(&s)?;
        let rhs = bialgebra.convolve_at(&c1, &c2, &s)?;
        verdict.record(lhs == rhs, || {
            format!("{}: S(φ₁⋆φ₂) = {lhs}, S(φ₁)*S(φ₂) = {rhs}", render_symword(algebra, &s, bialgebra.components()))
        });
    }
    Ok(verdict)
}

/// Wraps a `σ` and drops the first term of its value on single pairs whose word mixes both
/// legs and has at least two letters.
pub struct DroppedTermSigma<S> {
    pub inner: S,
    pub free: FreeProduct,
}

impl<S: SigmaMap> SigmaMap for DroppedTermSigma<S> {
    fn sigma(&self, s: &SymWord) -> Result<LachsTensor> {
        let mut out = self.inner.sigma(s)?;
        if let [l] = s.vars() {
            let legs: Vec<u8> = l.word.letters().iter().map(|&g| self.free.leg(g).0).collect();
            if legs.len() >= 2 && legs.iter().any(|&x| x != legs[0]) {
                let first = out.0.terms().next().map(|(m, c)| (m.clone(), c.clone()));
                if let Some((m, c)) = first {
                    out.0.add_term(m, -&c);
                }
            }
        }
        Ok(out)
    }
}

/// `σ(s*) = σ(s)*` on mixed basis elements up to `degree`, where `*` stars every word and
/// conjugates coefficients. Reported, never assumed.
pub fn check_sigma_star(product: &dyn UniversalProduct, free: &FreeProduct, d: usize, degree: usize) -> Result<LawVerdict> {
    let algebra = free.algebra();
    if !algebra.has_star() {
        return Err(Error::MissingStar);
    }
    let star_sym = |s: &SymWord| -> Result<SymWord> {
        s.vars()
            .iter()
            .map(|l| Ok(LachsLetter::new(l.component, Word::new(algebra.star_word(l.word.letters())?)?)))
            .collect::<Result<Vec<_>>>()
            .map(Monomial::from_vars)
    };
    let star_side = |letter: &LachsLetter, side: u8| -> Result<LachsLetter> {
        let offset = free.offset(side);
        let global: Vec<GenId> = letter.word.letters().iter().map(|&g| g + offset).collect();
        let starred: Vec<GenId> = algebra.star_word(&global)?.into_iter().map(|g| g - offset).collect();
        Ok(LachsLetter::new(letter.component, Word::new(starred)?))
    };
    let mut verdict = LawVerdict::new(format!("σ star compatibility ({})", product.name()));
    let sigma = ProductSigma::new(product, free.clone(), d)?;
    for s in symwords_up_to(algebra, d, degree) {
        let lhs = sigma.sigma(&star_sym(&s)?)?;
        let mut rhs = LachsTensor::zero();
        for (m, c) in sigma.sigma(&s)?.0.terms() {
            let vars = m
                .vars()
                .iter()
                .map(|v| Ok(Sided { side: v.side, letter: star_side(&v.letter, v.side)? }))
                .collect::<Result<Vec<_>>>()?;
            rhs.0.add_term(Monomial::from_vars(vars), c.conj());
        }
        verdict.record(lhs == rhs, || render_symword(algebra, &s, d));
    }
    Ok(verdict)
}
