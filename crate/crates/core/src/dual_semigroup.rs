//! m-faced dual semigroups on freely generated algebras.
//!
//! The comultiplication `Λ: B → B ⊔ B` is given by generator images and extended as a faced
//! homomorphism. Legs of `B^{⊔n}` use the flat indexing of [`FreeProduct`], so leg `l` copy of
//! generator `g` has index `(l−1)·|B| + g` and associativity identifications are the identity.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::faced_algebra::{FacedAlgebra, FacedHomomorphism, FreeProduct, GenId, NCPolynomial};
use crate::verdict::LawVerdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSemigroup {
    algebra: FacedAlgebra,
    pair: FreeProduct,
    comul: FacedHomomorphism,
    primitive: bool,
}

impl DualSemigroup {
    /// The tensor algebra over the span of the generators with `Λ(v) = v@1 + v@2`.
    pub fn primitive(b: &FacedAlgebra) -> Result<Self> {
        let pair = FreeProduct::power(b, 2)?;
        let n = b.len() as GenId;
        let images = (0..n)
            .map(|g| NCPolynomial::letter(g).add(&NCPolynomial::letter(g + n)))
            .collect();
        let comul = FacedHomomorphism::new(b.clone(), pair.algebra().clone(), images)?;
        Ok(DualSemigroup { algebra: b.clone(), pair, comul, primitive: true })
    }

    /// User-specified generator images over `B ⊔ B`. Laws are not enforced here; see
    /// [`check_counit`](Self::check_counit) and [`check_coassoc`](Self::check_coassoc).
    pub fn with_rule(b: &FacedAlgebra, images: Vec<NCPolynomial>) -> Result<Self> {
        let pair = FreeProduct::power(b, 2)?;
        let comul = FacedHomomorphism::new(b.clone(), pair.algebra().clone(), images)?;
        let primitive = DualSemigroup::primitive(b)?.comul == comul;
        Ok(DualSemigroup { algebra: b.clone(), pair, comul, primitive })
    }

    pub fn algebra(&self) -> &FacedAlgebra {
        &self.algebra
    }

    /// `B ⊔ B`.
    pub fn pair(&self) -> &FreeProduct {
        &self.pair
    }

    pub fn comultiplication(&self) -> &FacedHomomorphism {
        &self.comul
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Every generator image is a combination of single letters, so `Λ` preserves word length.
    pub fn is_graded(&self) -> bool {
        self.comul.images().iter().all(|p| p.terms().all(|(w, _)| w.len() == 1))
    }

    pub fn comultiply(&self, p: &NCPolynomial) -> Result<NCPolynomial> {
        self.comul.apply(p)
    }

    pub fn comultiply_word(&self, letters: &[GenId]) -> Result<NCPolynomial> {
        self.comul.apply_word(letters)
    }

    /// `(id ⊔ 0)Λ = id = (0 ⊔ id)Λ` on generators.
    pub fn check_counit(&self) -> Result<LawVerdict> {
        let id = FacedHomomorphism::identity(&self.algebra);
        let zero = FacedHomomorphism::zero(&self.algebra, &self.algebra);
        let left = self.pair.induced(&[&id, &zero], &self.algebra)?;
        let right = self.pair.induced(&[&zero, &id], &self.algebra)?;
        let mut verdict = LawVerdict::new("counit");
        for g in 0..self.algebra.len() as GenId {
            let v = NCPolynomial::letter(g);
            let image = self.comul.image(g);
            for (side, collapse) in [("id⊔0", &left), ("0⊔id", &right)] {
                let got = collapse.apply(image)?;
                verdict.record(got == v, || {
                    format!("generator {}: ({side})Λ gives {}", self.algebra.name(g), render(&self.algebra, &got))
                });
            }
        }
        Ok(verdict)
    }

    /// `(Λ ⊔ id)Λ = (id ⊔ Λ)Λ` on generators, as elements of `B^{⊔3}`. A counit failure is
    /// reported first.
    pub fn check_coassoc(&self) -> Result<LawVerdict> {
        let counit = self.check_counit()?;
        if !counit.passed() {
            return Ok(counit);
        }
        let triple = FreeProduct::power(&self.algebra, 3)?;
        let (left, right) = self.coassoc_sides(&triple)?;
        let mut verdict = LawVerdict::new("coassociativity");
        for g in 0..self.algebra.len() as GenId {
            let l = left.apply(self.comul.image(g))?;
            let r = right.apply(self.comul.image(g))?;
            verdict.record(l == r, || {
                format!(
                    "generator {}: (Λ⊔id)Λ = {} but (id⊔Λ)Λ = {}",
                    self.algebra.name(g),
                    render(triple.algebra(), &l),
                    render(triple.algebra(), &r)
                )
            });
        }
        Ok(verdict)
    }

    /// `Λ ⊔ id` and `id ⊔ Λ` as maps `B ⊔ B → B^{⊔3}`.
    fn coassoc_sides(&self, triple: &FreeProduct) -> Result<(FacedHomomorphism, FacedHomomorphism)> {
        let n = self.algebra.len() as GenId;
        let into_12 = self.shifted(&self.comul, triple, 0)?;
        let into_23 = self.shifted(&self.comul, triple, n)?;
        let leg1 = triple.embedding(&self.algebra, 1)?;
        let leg3 = triple.embedding(&self.algebra, 3)?;
        let left = self.pair.induced(&[&into_12, &leg3], triple.algebra())?;
        let right = self.pair.induced(&[&leg1, &into_23], triple.algebra())?;
        Ok((left, right))
    }

    /// `h` followed by relabeling every letter `g ↦ g + shift` into `target`.
    fn shifted(&self, h: &FacedHomomorphism, target: &FreeProduct, shift: GenId) -> Result<FacedHomomorphism> {
        let relabel = FacedHomomorphism::new(
            h.target().clone(),
            target.algebra().clone(),
            (0..h.target().len() as GenId).map(|g| NCPolynomial::letter(g + shift)).collect(),
        )?;
        relabel.compose_after(h)
    }

    /// `Λ(v*) = Λ(v)*` on generators.
    pub fn check_star_compatibility(&self) -> Result<LawVerdict> {
        if !self.algebra.has_star() {
            return Err(Error::MissingStar);
        }
        let mut verdict = LawVerdict::new("star compatibility");
        for g in 0..self.algebra.len() as GenId {
            let lhs = self.comul.image(self.algebra.star_of(g)?).clone();
            let rhs = self.comul.image(g).star(self.pair.algebra())?;
            verdict.record(lhs == rhs, || {
                format!(
                    "generator {}: Λ(v*) = {} but Λ(v)* = {}",
                    self.algebra.name(g),
                    render(self.pair.algebra(), &lhs),
                    render(self.pair.algebra(), &rhs)
                )
            });
        }
        Ok(verdict)
    }

    /// `Λ₁ = id`, `Λ_{n+1} = (Λ_n ⊔ id)Λ`, as a homomorphism `B → B^{⊔n}`.
    pub fn iterated(&self, n: usize) -> Result<(FreeProduct, FacedHomomorphism)> {
        if n == 0 {
            return Err(Error::InvalidArgument("iterated comultiplication needs n ≥ 1".into()));
        }
        let mut power = FreeProduct::power(&self.algebra, 1)?;
        let mut hom = FacedHomomorphism::new(
            self.algebra.clone(),
            power.algebra().clone(),
            (0..self.algebra.len() as GenId).map(NCPolynomial::letter).collect(),
        )?;
        for k in 1..n {
            let next = FreeProduct::power(&self.algebra, k + 1)?;
            let first = self.shifted(&hom, &next, 0)?;
            let last = next.embedding(&self.algebra, (k + 1) as u8)?;
            let step = self.pair.induced(&[&first, &last], next.algebra())?;
            hom = step.compose_after(&self.comul)?;
            power = next;
        }
        Ok((power, hom))
    }

    pub fn iterate_comultiplication(&self, n: usize, p: &NCPolynomial) -> Result<(FreeProduct, NCPolynomial)> {
        let (power, hom) = self.iterated(n)?;
        let image = hom.apply(p)?;
        Ok((power, image))
    }

    /// `(Λ_{n−1} ⊔ id)Λ = (id ⊔ Λ_{n−1})Λ` on generators.
    pub fn check_bracketing(&self, n: usize) -> Result<LawVerdict> {
        let mut verdict = LawVerdict::new(format!("bracketing independence n={n}"));
        if n < 2 {
            return Ok(verdict);
        }
        let (_, inner) = self.iterated(n - 1)?;
        let target = FreeProduct::power(&self.algebra, n)?;
        let left_inner = self.shifted(&inner, &target, 0)?;
        let last = target.embedding(&self.algebra, n as u8)?;
        let first = target.embedding(&self.algebra, 1)?;
        let right_inner = self.shifted(&inner, &target, self.algebra.len() as GenId)?;
        let left = self.pair.induced(&[&left_inner, &last], target.algebra())?;
        let right = self.pair.induced(&[&first, &right_inner], target.algebra())?;
        for g in 0..self.algebra.len() as GenId {
            let l = left.apply(self.comul.image(g))?;
            let r = right.apply(self.comul.image(g))?;
            verdict.record(l == r, || format!("generator {}", self.algebra.name(g)));
        }
        Ok(verdict)
    }
}

/// Human-readable rendering of a polynomial, e.g. `x@1 + 2 x@1 x@2`.
pub fn render(algebra: &FacedAlgebra, p: &NCPolynomial) -> alloc::string::String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.terms()
        .map(|(w, c)| {
            let word = algebra.render(w.letters());
            if c.is_one() {
                word
            } else {
                format!("({c}) {word}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
