//! Freely generated m-faced algebras, their free products and faced homomorphisms.
//!
//! Every algebra is presented by generators. A word is a sequence of generator indices; the
//! empty word only appears in unitized contexts, never inside an [`NCPolynomial`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coefficients::{Ring, Scalar};
use crate::error::{Error, Result};

/// Index of a generator inside its ambient algebra.
pub type GenId = u32;

/// Leg tag of a letter in a free product, 1-based.
pub type Leg = u8;

/// A generator with its face and (optional) adjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    /// 1-based face index.
    pub face: u8,
    pub star: Option<GenId>,
}

/// An m-faced algebra freely generated by a finite set of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacedAlgebra {
    m: usize,
    generators: Vec<Generator>,
}

impl FacedAlgebra {
    /// Validates faces, unique ids and that `star` (if present on any generator, then on all)
    /// is a face-preserving involutive bijection.
    pub fn new(m: usize, generators: Vec<Generator>) -> Result<Self> {
        if m == 0 || m > u8::MAX as usize {
            return Err(Error::InvalidAlgebra(format!("face count {m} out of range")));
        }
        let n = generators.len();
        let starred = generators.iter().filter(|g| g.star.is_some()).count();
        if starred != 0 && starred != n {
            return Err(Error::InvalidAlgebra("star given for some generators only".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.face == 0 || g.face as usize > m {
                return Err(Error::InvalidAlgebra(format!("generator {:?} has face {}", g.id, g.face)));
            }
            if g.id.is_empty() || g.id.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlgebra(format!("bad generator id {:?}", g.id)));
            }
            if generators[..i].iter().any(|h| h.id == g.id) {
                return Err(Error::InvalidAlgebra(format!("duplicate generator {:?}", g.id)));
            }
            if let Some(s) = g.star {
                let Some(partner) = generators.get(s as usize) else {
                    return Err(Error::InvalidAlgebra(format!("star of {:?} out of range", g.id)));
                };
                if partner.star != Some(i as GenId) {
                    return Err(Error::InvalidAlgebra(format!("star is not involutive at {:?}", g.id)));
                }
                if partner.face != g.face {
                    return Err(Error::InvalidAlgebra(format!("star changes the face of {:?}", g.id)));
                }
            }
        }
        Ok(FacedAlgebra { m, generators })
    }

    /// Builds a *-algebra from `(id, face)` pairs and a list of adjoint pairs; unlisted
    /// generators are self-adjoint.
    pub fn with_star(m: usize, gens: &[(&str, u8)], pairs: &[(&str, &str)]) -> Result<Self> {
        let index = |name: &str| {
            gens.iter()
                .position(|(id, _)| *id == name)
                .map(|i| i as GenId)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
        };
        let mut star: Vec<GenId> = (0..gens.len() as GenId).collect();
        for (a, b) in pairs {
            let (ia, ib) = (index(a)?, index(b)?);
            star[ia as usize] = ib;
            star[ib as usize] = ia;
        }
        let generators = gens
            .iter()
            .zip(star)
            .map(|(&(id, face), s)| Generator { id: id.to_string(), face, star: Some(s) })
            .collect();
        FacedAlgebra::new(m, generators)
    }

    /// Algebra without involution data.
    pub fn plain(m: usize, gens: &[(&str, u8)]) -> Result<Self> {
        let generators = gens
            .iter()
            .map(|&(id, face)| Generator { id: id.to_string(), face, star: None })
            .collect();
        FacedAlgebra::new(m, generators)
    }

    /// One self-adjoint generator `x` in face 1: the tensor algebra `T(ℂx)`.
    pub fn single_self_adjoint(name: &str) -> Self {
        FacedAlgebra::with_star(1, &[(name, 1)], &[]).expect("valid presentation")
    }

    pub fn faces(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn face(&self, g: GenId) -> u8 {
        self.generators[g as usize].face
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.generators[g as usize].id
    }

    pub fn has_star(&self) -> bool {
        self.generators.iter().all(|g| g.star.is_some())
    }

    pub fn star_of(&self, g: GenId) -> Result<GenId> {
        self.generators[g as usize].star.ok_or(Error::MissingStar)
    }

    pub fn index_of(&self, name: &str) -> Result<GenId> {
        self.generators
            .iter()
            .position(|g| g.id == name)
            .map(|i| i as GenId)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses a space-separated list of generator ids.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let letters = text.split_whitespace().map(|t| self.index_of(t)).collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    pub fn render(&self, letters: &[GenId]) -> String {
        if letters.is_empty() {
            return "1".into();
        }
        letters.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join(" ")
    }

    pub fn check_word(&self, letters: &[GenId]) -> Result<()> {
        match letters.iter().find(|&&g| g as usize >= self.len()) {
            Some(&g) => Err(Error::LetterOutOfRange { letter: g, generators: self.len() }),
            None => Ok(()),
        }
    }

    /// All nonempty words of length `1..=max_len`, graded then lexicographic in generator order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<GenId>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for g in 0..self.len() as GenId {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(Word));
            layer = next;
        }
        out
    }

    /// Reverses `letters` and stars each one.
    pub fn star_word(&self, letters: &[GenId]) -> Result<Vec<GenId>> {
        letters.iter().rev().map(|&g| self.star_of(g)).collect()
    }
}

/// A sequence of generator indices. Nonempty unless built by [`Word::unit`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(Vec<GenId>);

impl Word {
    pub fn new(letters: Vec<GenId>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn letter(g: GenId) -> Self {
        Word(vec![g])
    }

    /// The empty word, standing for the unit of a unitization.
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl core::borrow::Borrow<[GenId]> for Word {
    fn borrow(&self) -> &[GenId] {
        &self.0
    }
}

impl From<&[GenId]> for Word {
    fn from(s: &[GenId]) -> Self {
        Word(s.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{g}")?;
        }
        Ok(())
    }
}

/// Finite linear combination of nonempty words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCPolynomial<R: Ring = Scalar> {
    terms: BTreeMap<Word, R>,
}

impl<R: Ring> Default for NCPolynomial<R> {
    fn default() -> Self {
        NCPolynomial { terms: BTreeMap::new() }
    }
}

impl<R: Ring> NCPolynomial<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Result<Self> {
        Self::term(R::one(), w)
    }

    pub fn letter(g: GenId) -> Self {
        Self::term(R::one(), Word::letter(g)).expect("nonempty")
    }

    pub fn term(c: R, w: Word) -> Result<Self> {
        let mut p = Self::zero();
        p.add_term(w, c)?;
        Ok(p)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, R)>) -> Result<Self> {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, w: Word, c: R) -> Result<()> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        if c.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.get(&w) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone()).expect("nonempty words");
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.mul(c)).expect("nonempty words");
        }
        out
    }

    /// Free-algebra product: concatenation extended bilinearly.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2)).expect("nonempty words");
            }
        }
        out
    }

    /// Largest word length; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn check_in(&self, algebra: &FacedAlgebra) -> Result<()> {
        self.terms.keys().try_for_each(|w| algebra.check_word(w.letters()))
    }
}

impl NCPolynomial<Scalar> {
    /// Antilinear, antimultiplicative involution: reverse, star each letter, conjugate.
    pub fn star(&self, algebra: &FacedAlgebra) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(Word(algebra.star_word(w.letters())?), c.conj())?;
        }
        Ok(out)
    }
}

/// Checked product of two polynomials over the same algebra.
pub fn multiply(algebra: &FacedAlgebra, p: &NCPolynomial, q: &NCPolynomial) -> Result<NCPolynomial> {
    p.check_in(algebra).map_err(|e| Error::AlgebraMismatch(e.to_string()))?;
    q.check_in(algebra).map_err(|e| Error::AlgebraMismatch(e.to_string()))?;
    Ok(p.multiply(q))
}

/// A free product `A₁ ⊔ … ⊔ Aₙ`; generators are the concatenation of the factors' generators,
/// so nested binary products share the flat indexing of the n-fold product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    algebra: FacedAlgebra,
    offsets: Vec<GenId>,
}

impl FreeProduct {
    pub fn new(factors: &[&FacedAlgebra]) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::InvalidArgument("free product of no factors".into()));
        };
        let m = first.faces();
        let starred = factors.iter().all(|a| a.has_star());
        let mut generators = Vec::new();
        let mut offsets = Vec::with_capacity(factors.len());
        for (i, a) in factors.iter().enumerate() {
            if a.faces() != m {
                return Err(Error::FaceMismatch { left: m, right: a.faces() });
            }
            let offset = generators.len() as GenId;
            offsets.push(offset);
            for g in a.generators() {
                generators.push(Generator {
                    id: format!("{}@{}", g.id, i + 1),
                    face: g.face,
                    star: if starred { g.star.map(|s| s + offset) } else { None },
                });
            }
        }
        Ok(FreeProduct { algebra: FacedAlgebra::new(m, generators)?, offsets })
    }

    /// `B^{⊔n}` with legs `1..=n`.
    pub fn power(b: &FacedAlgebra, n: usize) -> Result<Self> {
        let factors: Vec<&FacedAlgebra> = core::iter::repeat_n(b, n).collect();
        FreeProduct::new(&factors)
    }

    pub fn algebra(&self) -> &FacedAlgebra {
        &self.algebra
    }

    pub fn legs(&self) -> usize {
        self.offsets.len()
    }

    pub fn offset(&self, leg: Leg) -> GenId {
        self.offsets[leg as usize - 1]
    }

    fn factor_len(&self, idx: usize) -> GenId {
        let end = self.offsets.get(idx + 1).copied().unwrap_or(self.algebra.len() as GenId);
        end - self.offsets[idx]
    }

    /// Leg and factor-local index of a product generator.
    pub fn leg(&self, g: GenId) -> (Leg, GenId) {
        let idx = self.offsets.partition_point(|&o| o <= g) - 1;
        (idx as Leg + 1, g - self.offsets[idx])
    }

    pub fn tag(&self, leg: Leg, local: GenId) -> GenId {
        self.offset(leg) + local
    }

    /// Canonical embedding of factor `leg` as a faced homomorphism.
    pub fn embedding(&self, factor: &FacedAlgebra, leg: Leg) -> Result<FacedHomomorphism> {
        if factor.len() as GenId != self.factor_len(leg as usize - 1) {
            return Err(Error::AlgebraMismatch(format!("factor {leg} has a different size")));
        }
        let off = self.offset(leg);
        let images = (0..factor.len() as GenId).map(|g| NCPolynomial::letter(g + off)).collect();
        FacedHomomorphism::new(factor.clone(), self.algebra.clone(), images)
    }

    /// The map `f₁ ⊔ … ⊔ fₙ` induced by one homomorphism per factor (coproduct property).
    pub fn induced(&self, maps: &[&FacedHomomorphism], target: &FacedAlgebra) -> Result<FacedHomomorphism> {
        if maps.len() != self.legs() {
            return Err(Error::InvalidArgument("one map per factor required".into()));
        }
        let mut images = Vec::with_capacity(self.algebra.len());
        for (i, f) in maps.iter().enumerate() {
            if f.images.len() as GenId != self.factor_len(i) {
                return Err(Error::AlgebraMismatch(format!("map {} has the wrong source", i + 1)));
            }
            images.extend(f.images.iter().cloned());
        }
        FacedHomomorphism::new(self.algebra.clone(), target.clone(), images)
    }

    /// Splits a product word into maximal runs of constant leg.
    pub fn alternating_blocks(&self, w: &Word) -> Vec<(Leg, Word)> {
        let mut out: Vec<(Leg, Word)> = Vec::new();
        for &g in w.letters() {
            let (leg, local) = self.leg(g);
            match out.last_mut() {
                Some((l, word)) if *l == leg => word.0.push(local),
                _ => out.push((leg, Word(vec![local]))),
            }
        }
        out
    }

    /// Inverse of [`alternating_blocks`](Self::alternating_blocks).
    pub fn reassemble(&self, blocks: &[(Leg, Word)]) -> Word {
        Word(blocks.iter().flat_map(|(leg, w)| w.0.iter().map(move |&g| self.tag(*leg, g))).collect())
    }
}

/// Convenience for the binary case.
pub fn free_product(a: &FacedAlgebra, b: &FacedAlgebra) -> Result<FreeProduct> {
    FreeProduct::new(&[a, b])
}

/// Homomorphism of m-faced algebras given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacedHomomorphism {
    source: FacedAlgebra,
    target: FacedAlgebra,
    images: Vec<NCPolynomial>,
}

impl FacedHomomorphism {
    /// Checks that each image lives in the target and in the face of its generator.
    pub fn new(source: FacedAlgebra, target: FacedAlgebra, images: Vec<NCPolynomial>) -> Result<Self> {
        if source.faces() != target.faces() {
            return Err(Error::FaceMismatch { left: source.faces(), right: target.faces() });
        }
        if images.len() != source.len() {
            let g = source.generators().get(images.len()).map(|g| g.id.clone()).unwrap_or_default();
            return Err(Error::MissingRule(g));
        }
        for (g, img) in images.iter().enumerate() {
            img.check_in(&target)?;
            let face = source.face(g as GenId);
            if img.terms().any(|(w, _)| w.letters().iter().any(|&h| target.face(h) != face)) {
                return Err(Error::NotFaced(source.name(g as GenId).to_string()));
            }
        }
        Ok(FacedHomomorphism { source, target, images })
    }

    pub fn identity(a: &FacedAlgebra) -> Self {
        let images = (0..a.len() as GenId).map(NCPolynomial::letter).collect();
        FacedHomomorphism { source: a.clone(), target: a.clone(), images }
    }

    /// The zero map into `target`.
    pub fn zero(source: &FacedAlgebra, target: &FacedAlgebra) -> Self {
        let images = vec![NCPolynomial::zero(); source.len()];
        FacedHomomorphism { source: source.clone(), target: target.clone(), images }
    }

    pub fn source(&self) -> &FacedAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FacedAlgebra {
        &self.target
    }

    pub fn image(&self, g: GenId) -> &NCPolynomial {
        &self.images[g as usize]
    }

    pub fn images(&self) -> &[NCPolynomial] {
        &self.images
    }

    pub fn apply_word(&self, letters: &[GenId]) -> Result<NCPolynomial> {
        self.source.check_word(letters)?;
        let Some((&first, rest)) = letters.split_first() else {
            return Err(Error::EmptyWord);
        };
        let mut acc = self.images[first as usize].clone();
        for &g in rest {
            if acc.is_zero() {
                break;
            }
            acc = acc.multiply(&self.images[g as usize]);
        }
        Ok(acc)
    }

    /// Linear, multiplicative extension to polynomials.
    pub fn apply(&self, p: &NCPolynomial) -> Result<NCPolynomial> {
        let mut out = NCPolynomial::zero();
        for (w, c) in p.terms() {
            out = out.add(&self.apply_word(w.letters())?.scale(c));
        }
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &FacedHomomorphism) -> Result<FacedHomomorphism> {
        let images = first.images.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
        FacedHomomorphism::new(first.source.clone(), self.target.clone(), images)
    }
}

pub fn apply_hom(j: &FacedHomomorphism, p: &NCPolynomial) -> Result<NCPolynomial> {
    j.apply(p)
}

/// Unitization `𝟙A`: `A` plus a formal two-sided unit with `1* = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitization {
    base: FacedAlgebra,
}

/// Element `λ·1 + a` of a unitization.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnitalElement {
    pub unit: Scalar,
    pub body: NCPolynomial,
}

impl Unitization {
    pub fn base(&self) -> &FacedAlgebra {
        &self.base
    }

    pub fn unit(&self) -> UnitalElement {
        UnitalElement { unit: Scalar::one(), body: NCPolynomial::zero() }
    }

    pub fn embed(&self, body: NCPolynomial) -> UnitalElement {
        UnitalElement { unit: Scalar::zero(), body }
    }

    pub fn multiply(&self, x: &UnitalElement, y: &UnitalElement) -> UnitalElement {
        let body = x
            .body
            .multiply(&y.body)
            .add(&x.body.scale(&y.unit))
            .add(&y.body.scale(&x.unit));
        UnitalElement { unit: &x.unit * &y.unit, body }
    }

    pub fn star(&self, x: &UnitalElement) -> Result<UnitalElement> {
        Ok(UnitalElement { unit: x.unit.conj(), body: x.body.star(&self.base)? })
    }

    /// Expands an element over words, with the empty word standing for the unit.
    pub fn word_terms(&self, x: &UnitalElement) -> Vec<(Word, Scalar)> {
        let mut out = Vec::new();
        if !x.unit.is_zero() {
            out.push((Word::unit(), x.unit.clone()));
        }
        out.extend(x.body.terms().map(|(w, c)| (w.clone(), c.clone())));
        out
    }
}

pub fn unitize(a: &FacedAlgebra) -> Unitization {
    Unitization { base: a.clone() }
}
