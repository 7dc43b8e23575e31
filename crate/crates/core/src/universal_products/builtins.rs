//! The six built-in products.
//!
//! Each evaluator works on the shape of a mixed word (leg and face of every letter) and
//! returns the coefficient polynomial in sub-evaluations over position subsets. Tensor, free,
//! Boolean, monotone and antimonotone act componentwise and ignore faces, so they apply to
//! every `(m, d)`; c-free needs `d = 2`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{CoefficientPolynomial, LetterShape, PosSymbol, UniversalProduct};
use crate::coefficients::{Monomial, Polynomial, Scalar};
use crate::error::Error;
use crate::faced_algebra::Leg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinProduct {
    Tensor,
    Free,
    Boolean,
    /// `φ₁ ▷ φ₂`: leg-2 blocks factor out one by one, leg-1 letters stay together in `φ₁`.
    Monotone,
    /// Mirror of [`Monotone`](Self::Monotone).
    Antimonotone,
    /// Bożejko–Speicher c-freeness on pairs: component 1 is the state, component 2 combines
    /// freely.
    CFree,
}

impl BuiltinProduct {
    pub const ALL: [BuiltinProduct; 6] = [
        BuiltinProduct::Tensor,
        BuiltinProduct::Free,
        BuiltinProduct::Boolean,
        BuiltinProduct::Monotone,
        BuiltinProduct::Antimonotone,
        BuiltinProduct::CFree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinProduct::Tensor => "tensor",
            BuiltinProduct::Free => "free",
            BuiltinProduct::Boolean => "boolean",
            BuiltinProduct::Monotone => "monotone",
            BuiltinProduct::Antimonotone => "antimonotone",
            BuiltinProduct::CFree => "cfree",
        }
    }

    /// Smallest number of components the product accepts.
    pub fn natural_components(self) -> usize {
        match self {
            BuiltinProduct::CFree => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for BuiltinProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinProduct {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        BuiltinProduct::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown product {s:?}")))
    }
}

impl UniversalProduct for BuiltinProduct {
    fn name(&self) -> &str {
        self.as_str()
    }

    fn applicable(&self, m: usize, d: usize) -> bool {
        m >= 1
            && match self {
                BuiltinProduct::CFree => d == 2,
                _ => d >= 1,
            }
    }

    fn coefficients(&self, shape: &[LetterShape], d: usize) -> Vec<CoefficientPolynomial> {
        let full = full_mask(shape.len());
        match self {
            BuiltinProduct::Tensor => (1..=d as u16).map(|k| tensor(shape, full, k)).collect(),
            BuiltinProduct::Boolean => (1..=d as u16).map(|k| boolean(shape, full, k)).collect(),
            BuiltinProduct::Monotone => (1..=d as u16).map(|k| monotone(shape, full, k, 1)).collect(),
            BuiltinProduct::Antimonotone => (1..=d as u16).map(|k| monotone(shape, full, k, 2)).collect(),
            BuiltinProduct::Free => (1..=d as u16)
                .map(|k| FreeRecursion::new(shape, k).eval(full))
                .collect(),
            BuiltinProduct::CFree => {
                let free = FreeRecursion::new(shape, 2).eval(full);
                let state = CFreeRecursion::new(shape).eval(full);
                alloc::vec![state, free]
            }
        }
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Maximal runs of equal leg among the positions selected by `mask`, as `(leg, positions)`.
pub(crate) fn blocks(shape: &[LetterShape], mask: u64) -> Vec<(Leg, u64)> {
    let mut out: Vec<(Leg, u64)> = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let leg = shape[i].leg;
        match out.last_mut() {
            Some((l, m)) if *l == leg => *m |= 1 << i,
            _ => out.push((leg, 1 << i)),
        }
    }
    out
}

fn leg_mask(shape: &[LetterShape], mask: u64, leg: Leg) -> u64 {
    shape
        .iter()
        .enumerate()
        .filter(|(i, s)| s.leg == leg && mask >> i & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn sym(factor: Leg, component: u16, positions: u64) -> CoefficientPolynomial {
    if positions == 0 {
        return Polynomial::one();
    }
    Polynomial::var(PosSymbol { factor, component, positions })
}

fn monomial(vars: Vec<PosSymbol>) -> CoefficientPolynomial {
    Polynomial::term(Scalar::one(), Monomial::from_vars(vars))
}

fn tensor(shape: &[LetterShape], mask: u64, k: u16) -> CoefficientPolynomial {
    let vars = [1, 2]
        .into_iter()
        .map(|leg| (leg, leg_mask(shape, mask, leg)))
        .filter(|&(_, m)| m != 0)
        .map(|(factor, positions)| PosSymbol { factor, component: k, positions })
        .collect();
    monomial(vars)
}

fn boolean(shape: &[LetterShape], mask: u64, k: u16) -> CoefficientPolynomial {
    monomial(
        blocks(shape, mask)
            .into_iter()
            .map(|(factor, positions)| PosSymbol { factor, component: k, positions })
            .collect(),
    )
}

/// `outer` keeps all its letters in one moment; blocks of the other leg factor out.
fn monotone(shape: &[LetterShape], mask: u64, k: u16, outer: Leg) -> CoefficientPolynomial {
    let mut vars: Vec<PosSymbol> = blocks(shape, mask)
        .into_iter()
        .filter(|&(leg, _)| leg != outer)
        .map(|(factor, positions)| PosSymbol { factor, component: k, positions })
        .collect();
    let outer_positions = leg_mask(shape, mask, outer);
    if outer_positions != 0 {
        vars.push(PosSymbol { factor: outer, component: k, positions: outer_positions });
    }
    monomial(vars)
}

/// Sum over proper sub-selections `S` of the blocks, as `(sign, outside blocks, union of S)`.
fn proper_subsets(blocks: &[(Leg, u64)]) -> impl Iterator<Item = (bool, Vec<(Leg, u64)>, u64)> + '_ {
    let r = blocks.len();
    (0u64..(1 << r) - 1).map(move |s| {
        let mut outside = Vec::new();
        let mut union = 0;
        for (i, &(leg, m)) in blocks.iter().enumerate() {
            if s >> i & 1 == 1 {
                union |= m;
            } else {
                outside.push((leg, m));
            }
        }
        // (-1)^{r-|S|}
        let negative = outside.len() % 2 == 1;
        (negative, outside, union)
    })
}

/// Free product by centering: for alternating blocks `c₁…c_r`,
/// `0 = φ(c̊₁⋯c̊_r) = Σ_S (−1)^{r−|S|} Π_{i∉S} φ(c_i) · φ(c_S)`, solved for the `S = [r]` term.
struct FreeRecursion<'a> {
    shape: &'a [LetterShape],
    component: u16,
    memo: BTreeMap<u64, CoefficientPolynomial>,
}

impl<'a> FreeRecursion<'a> {
    fn new(shape: &'a [LetterShape], component: u16) -> Self {
        FreeRecursion { shape, component, memo: BTreeMap::new() }
    }

    fn eval(&mut self, mask: u64) -> CoefficientPolynomial {
        if mask == 0 {
            return Polynomial::one();
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let bl = blocks(self.shape, mask);
        let result = if bl.len() == 1 {
            sym(bl[0].0, self.component, mask)
        } else {
            let mut acc = Polynomial::zero();
            for (negative, outside, union) in proper_subsets(&bl) {
                let mut term = self.eval(union);
                for (leg, m) in outside {
                    term = term.mul_ref(&sym(leg, self.component, m));
                }
                // φ(c₁⋯c_r) = −Σ_{S⊊[r]} (−1)^{r−|S|} (…)
                if negative {
                    acc.add_assign_ref(&term);
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        };
        self.memo.insert(mask, result.clone());
        result
    }
}

/// State component of the c-free product: blocks are centered with respect to component 2 and
/// alternating centered products factor into component-1 values,
/// `Π_i (φ(c_i) − ψ(c_i)) = Σ_S (−1)^{r−|S|} Π_{i∉S} ψ(c_i) · φ(c_S)`.
struct CFreeRecursion<'a> {
    shape: &'a [LetterShape],
    memo: BTreeMap<u64, CoefficientPolynomial>,
}

impl<'a> CFreeRecursion<'a> {
    fn new(shape: &'a [LetterShape]) -> Self {
        CFreeRecursion { shape, memo: BTreeMap::new() }
    }

    fn eval(&mut self, mask: u64) -> CoefficientPolynomial {
        if mask == 0 {
            return Polynomial::one();
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let bl = blocks(self.shape, mask);
        let result = if bl.len() == 1 {
            sym(bl[0].0, 1, mask)
        } else {
            let mut acc = Polynomial::one();
            for &(leg, m) in &bl {
                acc = acc.mul_ref(&(&sym(leg, 1, m) - &sym(leg, 2, m)));
            }
            for (negative, outside, union) in proper_subsets(&bl) {
                let mut term = self.eval(union);
                for (leg, m) in outside {
                    term = term.mul_ref(&sym(leg, 2, m));
                }
                if negative {
                    acc.add_assign_ref(&term);
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        };
        self.memo.insert(mask, result.clone());
        result
    }
}
