//! Universal products of `d`-valued functionals on m-faced algebras.
//!
//! A product is given by its coefficient polynomials: for each mixed word shape (the leg and
//! face of every letter) and each component, a polynomial in sub-evaluations `φ_leg,k(w|S)` of
//! the factors on position subsets `S`. Because the coefficients see only the shape, every
//! product defined this way is universal; associativity and restriction are checked by
//! [`check_axioms`].

mod axioms;
mod builtins;
mod convolution;
mod functional;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

pub use axioms::{check_axioms, AxiomConfig, AxiomReport, CorruptedFree, LawVerdict};
pub use builtins::BuiltinProduct;
pub use convolution::{convolve, convolve_power, Convolution};
pub use functional::{
    evaluate, transpose, unitize_functional, Functional, Moments, Pullback, RandomFunctional, Unitized,
};

use crate::coefficients::{MomentSymbol, Polynomial, Ring, Scalar, SymbolicPolynomial};
use crate::error::{Error, Result};
use crate::faced_algebra::{FacedAlgebra, FreeProduct, GenId, Leg, Word};

/// Longest mixed word a product evaluator accepts; position subsets are `u64` bitmasks.
pub const MAX_WORD_LEN: usize = 64;

/// Leg (1 or 2) and face of one letter of a mixed word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterShape {
    pub leg: Leg,
    pub face: u8,
}

/// The sub-evaluation `φ_factor,component` on the letters at `positions` (bit `i` = letter `i`).
/// All selected letters have leg `factor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosSymbol {
    pub factor: Leg,
    pub component: u16,
    pub positions: u64,
}

impl fmt::Display for PosSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ{}_{}[{:#b}]", self.factor, self.component, self.positions)
    }
}

pub type CoefficientPolynomial = Polynomial<PosSymbol>;

/// An m-d-universal product given by its coefficient polynomials.
///
/// Implementations must satisfy the restriction property (a single-leg shape yields the
/// corresponding symbol) and be associative; [`check_axioms`] tests both. Third-party products
/// (bifree, bi-Boolean, …) plug in by implementing this trait.
pub trait UniversalProduct: Send + Sync {
    fn name(&self) -> &str;

    fn applicable(&self, m: usize, d: usize) -> bool;

    /// One polynomial per component `1..=d`. `shape.len() ≤ MAX_WORD_LEN`.
    fn coefficients(&self, shape: &[LetterShape], d: usize) -> Vec<CoefficientPolynomial>;
}

impl<U: UniversalProduct + ?Sized> UniversalProduct for &U {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn applicable(&self, m: usize, d: usize) -> bool {
        (**self).applicable(m, d)
    }
    fn coefficients(&self, shape: &[LetterShape], d: usize) -> Vec<CoefficientPolynomial> {
        (**self).coefficients(shape, d)
    }
}

impl<U: UniversalProduct + ?Sized> UniversalProduct for Box<U> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn applicable(&self, m: usize, d: usize) -> bool {
        (**self).applicable(m, d)
    }
    fn coefficients(&self, shape: &[LetterShape], d: usize) -> Vec<CoefficientPolynomial> {
        (**self).coefficients(shape, d)
    }
}

/// Looks up a built-in product by name.
pub fn builtin(name: &str) -> Result<BuiltinProduct> {
    name.parse()
}

/// Evaluation-local cache of coefficient polynomials by shape.
pub struct PatternCache<'u> {
    product: &'u dyn UniversalProduct,
    d: usize,
    table: RefCell<BTreeMap<Vec<LetterShape>, Rc<Vec<CoefficientPolynomial>>>>,
}

impl<'u> PatternCache<'u> {
    pub fn new(product: &'u dyn UniversalProduct, d: usize) -> Self {
        PatternCache { product, d, table: RefCell::new(BTreeMap::new()) }
    }

    pub fn product(&self) -> &'u dyn UniversalProduct {
        self.product
    }

    pub fn get(&self, shape: &[LetterShape]) -> Result<Rc<Vec<CoefficientPolynomial>>> {
        if shape.len() > MAX_WORD_LEN {
            return Err(Error::WordTooLong { max: MAX_WORD_LEN });
        }
        if let Some(p) = self.table.borrow().get(shape) {
            return Ok(p.clone());
        }
        let polys = Rc::new(self.product.coefficients(shape, self.d));
        if polys.len() != self.d {
            return Err(Error::InvalidArgument(format!(
                "product {} returned {} components, expected {}",
                self.product.name(),
                polys.len(),
                self.d
            )));
        }
        self.table.borrow_mut().insert(shape.to_vec(), polys.clone());
        Ok(polys)
    }
}

pub fn shape_of(free: &FreeProduct, letters: &[GenId]) -> Vec<LetterShape> {
    letters
        .iter()
        .map(|&g| LetterShape { leg: free.leg(g).0, face: free.algebra().face(g) })
        .collect()
}

fn subword(free: &FreeProduct, letters: &[GenId], positions: u64) -> Vec<GenId> {
    letters
        .iter()
        .enumerate()
        .filter(|(i, _)| positions >> i & 1 == 1)
        .map(|(_, &g)| free.leg(g).1)
        .collect()
}

/// The product functional `φ₁ ⊙ φ₂` on `A₁ ⊔ A₂`, evaluated lazily with memoization.
pub struct ProductFunctional<'a, R: Ring = Scalar> {
    left: &'a dyn Moments<R>,
    right: &'a dyn Moments<R>,
    free: FreeProduct,
    patterns: PatternCache<'a>,
    memo: RefCell<BTreeMap<Vec<GenId>, Vec<R>>>,
}

impl<'a, R: Ring> ProductFunctional<'a, R> {
    pub fn new(product: &'a dyn UniversalProduct, left: &'a dyn Moments<R>, right: &'a dyn Moments<R>) -> Result<Self> {
        let d = left.components();
        if right.components() != d {
            return Err(Error::InvalidArgument(format!(
                "factors have {d} and {} components",
                right.components()
            )));
        }
        let free = FreeProduct::new(&[left.algebra(), right.algebra()])?;
        let m = free.algebra().faces();
        if !product.applicable(m, d) {
            return Err(Error::NotApplicable { name: product.name().into(), m, d });
        }
        Ok(ProductFunctional { left, right, free, patterns: PatternCache::new(product, d), memo: RefCell::new(BTreeMap::new()) })
    }

    pub fn free_product(&self) -> &FreeProduct {
        &self.free
    }

    fn compute(&self, letters: &[GenId]) -> Result<Vec<R>> {
        let shape = shape_of(&self.free, letters);
        let polys = self.patterns.get(&shape)?;
        let mut sub: BTreeMap<(Leg, u64), Vec<R>> = BTreeMap::new();
        let mut out = Vec::with_capacity(polys.len());
        for p in polys.iter() {
            out.push(p.substitute_into(|s: &PosSymbol| {
                let key = (s.factor, s.positions);
                if let alloc::collections::btree_map::Entry::Vacant(e) = sub.entry(key) {
                    let w = subword(&self.free, letters, s.positions);
                    e.insert(if s.factor == 1 { self.left.moment(&w)? } else { self.right.moment(&w)? });
                }
                Ok(sub[&key][s.component as usize - 1].clone())
            })?);
        }
        Ok(out)
    }
}

impl<R: Ring> Moments<R> for ProductFunctional<'_, R> {
    fn algebra(&self) -> &FacedAlgebra {
        self.free.algebra()
    }

    fn components(&self) -> usize {
        self.left.components()
    }

    fn moment(&self, letters: &[GenId]) -> Result<Vec<R>> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.free.algebra().check_word(letters)?;
        if let Some(v) = self.memo.borrow().get(letters) {
            return Ok(v.clone());
        }
        let v = self.compute(letters)?;
        self.memo.borrow_mut().insert(letters.to_vec(), v.clone());
        Ok(v)
    }

    fn degree(&self) -> Option<usize> {
        match (self.left.degree(), self.right.degree()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// `(φ₁ ⊙ φ₂)(w)` for a word `w` over `A₁ ⊔ A₂`.
pub fn eval_product<R: Ring>(
    product: &dyn UniversalProduct,
    left: &dyn Moments<R>,
    right: &dyn Moments<R>,
    w: &Word,
) -> Result<Vec<R>> {
    ProductFunctional::new(product, left, right)?.moment(w.letters())
}

/// The coefficient polynomials of `w` over `free = A₁ ⊔ A₂` in formal moment symbols.
pub fn eval_product_symbolic(
    product: &dyn UniversalProduct,
    free: &FreeProduct,
    d: usize,
    w: &Word,
) -> Result<Vec<SymbolicPolynomial>> {
    if free.legs() != 2 {
        return Err(Error::InvalidArgument("symbolic evaluation needs a binary free product".into()));
    }
    let m = free.algebra().faces();
    if !product.applicable(m, d) {
        return Err(Error::NotApplicable { name: product.name().into(), m, d });
    }
    free.algebra().check_word(w.letters())?;
    if w.len() > MAX_WORD_LEN {
        return Err(Error::WordTooLong { max: MAX_WORD_LEN });
    }
    let shape = shape_of(free, w.letters());
    Ok(product
        .coefficients(&shape, d)
        .iter()
        .map(|p| symbolize(p, free, w.letters()))
        .collect())
}

pub(crate) fn symbolize(p: &CoefficientPolynomial, free: &FreeProduct, letters: &[GenId]) -> SymbolicPolynomial {
    p.map_vars(|s| MomentSymbol {
        factor: s.factor,
        component: s.component,
        word: Word::from(subword(free, letters, s.positions).as_slice()),
    })
}
