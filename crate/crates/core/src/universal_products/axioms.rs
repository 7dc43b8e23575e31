//! Randomized exact checks of restriction, universality and associativity.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::builtins::{blocks, full_mask};
use super::{BuiltinProduct, CoefficientPolynomial, LetterShape, Moments, ProductFunctional, Pullback, RandomFunctional, UniversalProduct};
use crate::coefficients::Scalar;
use crate::error::Result;
use crate::faced_algebra::{FacedAlgebra, FacedHomomorphism, FreeProduct, GenId, Generator, NCPolynomial, Word};
use crate::random::{coin, index_below, seeded, small_scalar};
pub use crate::verdict::LawVerdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomConfig {
    pub m: usize,
    pub d: usize,
    pub trials: usize,
    pub max_len: usize,
    /// Random words compared per trial and law.
    pub words_per_trial: usize,
    pub seed: u64,
}

impl AxiomConfig {
    pub fn new(d: usize, trials: usize, max_len: usize, seed: u64) -> Self {
        AxiomConfig { m: 1, d, trials, max_len, words_per_trial: 4, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub product: String,
    pub config: AxiomConfig,
    pub restriction: LawVerdict,
    pub universality: LawVerdict,
    pub associativity: LawVerdict,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.laws().iter().all(|v| v.passed())
    }

    pub fn laws(&self) -> [&LawVerdict; 3] {
        [&self.restriction, &self.universality, &self.associativity]
    }
}

/// Checks the three axioms exactly on pseudo-random functionals and words.
pub fn check_axioms(product: &dyn UniversalProduct, config: AxiomConfig) -> Result<AxiomReport> {
    let AxiomConfig { m, d, trials, max_len, words_per_trial, seed } = config;
    let mut rng = seeded(seed);
    let mut report = AxiomReport {
        product: product.name().into(),
        config,
        restriction: LawVerdict::new("restriction"),
        universality: LawVerdict::new("universality"),
        associativity: LawVerdict::new("associativity"),
    };
    let gens = m.max(2);
    let algebras: Vec<FacedAlgebra> = ["a", "b", "c"].iter().map(|p| sample_algebra(p, m, gens)).collect::<Result<_>>()?;
    let (a, b, c) = (&algebras[0], &algebras[1], &algebras[2]);

    for trial in 0..trials {
        let s = rng.next_u64();
        let phi1 = RandomFunctional::new(a, d, s);
        let phi2 = RandomFunctional::new(b, d, s ^ 1);
        let phi3 = RandomFunctional::new(c, d, s ^ 2);
        let p12 = ProductFunctional::new(product, &phi1, &phi2)?;
        let free = p12.free_product().clone();

        for _ in 0..words_per_trial {
            for (leg, phi) in [(1u8, &phi1 as &dyn Moments), (2, &phi2)] {
                let w = random_word(&mut rng, phi.algebra(), max_len);
                let tagged: Vec<GenId> = w.iter().map(|&g| free.tag(leg, g)).collect();
                let got = p12.moment(&tagged)?;
                let expected = phi.moment(&w)?;
                report.restriction.record(got == expected, || {
                    format!("trial {trial}: word {} gives {} instead of {}", free.algebra().render(&tagged), show(&got), show(&expected))
                });
            }
        }

        let j1 = random_hom(&mut rng, a)?;
        let j2 = random_hom(&mut rng, b)?;
        let pb1 = Pullback::new(&phi1, &j1)?;
        let pb2 = Pullback::new(&phi2, &j2)?;
        let lhs = ProductFunctional::new(product, &pb1, &pb2)?;
        let e1 = free.embedding(a, 1)?.compose_after(&j1)?;
        let e2 = free.embedding(b, 2)?.compose_after(&j2)?;
        let joint = lhs.free_product().induced(&[&e1, &e2], free.algebra())?;
        let rhs = Pullback::new(&p12, &joint)?;
        for _ in 0..words_per_trial {
            let w = random_word(&mut rng, lhs.algebra(), max_len);
            let l = lhs.moment(&w)?;
            let r = rhs.moment(&w)?;
            report.universality.record(l == r, || {
                format!("trial {trial}: word {}: {} vs {}", lhs.algebra().render(&w), show(&l), show(&r))
            });
        }

        let p23 = ProductFunctional::new(product, &phi2, &phi3)?;
        let left = ProductFunctional::new(product, &p12, &phi3)?;
        let right = ProductFunctional::new(product, &phi1, &p23)?;
        let triple = FreeProduct::new(&[a, b, c])?;
        for _ in 0..words_per_trial {
            let w = random_mixed_word(&mut rng, &triple, max_len);
            let l = left.moment(&w)?;
            let r = right.moment(&w)?;
            report.associativity.record(l == r, || {
                format!("trial {trial}: word {}: {} vs {}", triple.algebra().render(&w), show(&l), show(&r))
            });
        }
    }
    Ok(report)
}

fn show(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| format!("{s}")).collect();
    format!("({})", parts.join(", "))
}

/// `gens` generators named `{prefix}0, {prefix}1, …` with faces assigned cyclically; every face
/// is inhabited when `gens ≥ m`.
fn sample_algebra(prefix: &str, m: usize, gens: usize) -> Result<FacedAlgebra> {
    let generators = (0..gens)
        .map(|i| Generator { id: format!("{prefix}{i}"), face: (i % m + 1) as u8, star: None })
        .collect();
    FacedAlgebra::new(m, generators)
}

fn random_word(rng: &mut impl RngCore, algebra: &FacedAlgebra, max_len: usize) -> Vec<GenId> {
    let len = 1 + index_below(rng, max_len.max(1));
    (0..len).map(|_| index_below(rng, algebra.len()) as GenId).collect()
}

/// Word over the product with frequent leg changes, so that most shapes alternate.
fn random_mixed_word(rng: &mut impl RngCore, free: &FreeProduct, max_len: usize) -> Vec<GenId> {
    let len = 1 + index_below(rng, max_len.max(1));
    let n = free.algebra().len();
    (0..len).map(|_| index_below(rng, n) as GenId).collect()
}

/// Generator substitution `g ↦ Σ c·u` with 1–2 terms of words of length 1–2 in the same face.
fn random_hom(rng: &mut impl RngCore, target: &FacedAlgebra) -> Result<FacedHomomorphism> {
    let mut images = Vec::with_capacity(target.len());
    for g in 0..target.len() as GenId {
        let face = target.face(g);
        let same_face: Vec<GenId> = (0..target.len() as GenId).filter(|&h| target.face(h) == face).collect();
        let mut image = NCPolynomial::zero();
        let terms = 1 + usize::from(coin(rng));
        for _ in 0..terms {
            let len = if index_below(rng, 4) == 0 { 2 } else { 1 };
            let letters = (0..len).map(|_| same_face[index_below(rng, same_face.len())]).collect();
            image.add_term(Word::new(letters)?, small_scalar(rng, 3))?;
        }
        images.push(image);
    }
    FacedHomomorphism::new(target.clone(), target.clone(), images)
}

/// Free product with the sign of its longest coefficient monomial flipped on shapes with at
/// least four alternating blocks. Universal and restricting, but not associative.
#[derive(Clone, Copy, Debug, Default)]
pub struct CorruptedFree;

impl UniversalProduct for CorruptedFree {
    fn name(&self) -> &str {
        "free-corrupted"
    }

    fn applicable(&self, m: usize, d: usize) -> bool {
        BuiltinProduct::Free.applicable(m, d)
    }

    fn coefficients(&self, shape: &[LetterShape], d: usize) -> Vec<CoefficientPolynomial> {
        let polys = BuiltinProduct::Free.coefficients(shape, d);
        if blocks(shape, full_mask(shape.len())).len() < 4 {
            return polys;
        }
        polys
            .into_iter()
            .map(|p| {
                let Some(longest) = p.terms().map(|(m, _)| m.len()).max() else {
                    return p;
                };
                let mut out = CoefficientPolynomial::zero();
                for (m, c) in p.terms() {
                    let c = if m.len() == longest { -c } else { c.clone() };
                    out.add_term(m.clone(), c);
                }
                out
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_pass_small_battery() {
        for u in BuiltinProduct::ALL {
            let report = check_axioms(&u, AxiomConfig::new(u.natural_components(), 5, 5, 11)).unwrap();
            assert!(report.passed(), "{u}: {:?}", report.laws());
        }
    }

    #[test]
    fn tensor_passes_for_several_faces() {
        for (m, d) in [(2, 1), (2, 2), (3, 1)] {
            let mut config = AxiomConfig::new(d, 4, 4, 5);
            config.m = m;
            assert!(check_axioms(&BuiltinProduct::Tensor, config).unwrap().passed(), "m={m} d={d}");
        }
    }

    #[test]
    fn corrupted_free_fails_associativity() {
        let mut config = AxiomConfig::new(1, 20, 6, 3);
        config.words_per_trial = 8;
        let report = check_axioms(&CorruptedFree, config).unwrap();
        assert!(report.restriction.passed());
        assert!(report.universality.passed());
        assert!(!report.associativity.passed());
    }
}
