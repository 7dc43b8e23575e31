//! Random positive functionals from finite-dimensional *-representations.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::faced_algebra::{FacedAlgebra, GenId, Word};
use crate::random::{coin, seeded, small_real, small_scalar};
use crate::universal_products::{Functional, Moments};

type Matrix = Vec<Vec<Scalar>>;

fn adjoint(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].conj()).collect()).collect()
}

fn mat_vec(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            let mut acc = Scalar::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
        .collect()
}

fn inner(u: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b) in u.iter().zip(v) {
        acc += &(&a.conj() * b);
    }
    acc
}

/// `π(g)` for every generator, with `π(g*) = π(g)*`.
fn random_representation(rng: &mut impl RngCore, algebra: &FacedAlgebra, dim: usize) -> Result<Vec<Matrix>> {
    let mut pi: Vec<Option<Matrix>> = vec![None; algebra.len()];
    for g in 0..algebra.len() as GenId {
        if pi[g as usize].is_some() {
            continue;
        }
        let s = algebra.star_of(g)?;
        let mut m: Matrix = (0..dim).map(|_| (0..dim).map(|_| small_scalar(rng, 2)).collect()).collect();
        if s == g {
            for i in 0..dim {
                m[i][i] = small_real(rng, 2);
                for j in 0..i {
                    m[i][j] = m[j][i].conj();
                }
            }
        } else {
            pi[s as usize] = Some(adjoint(&m));
        }
        pi[g as usize] = Some(m);
    }
    Ok(pi.into_iter().map(|m| m.expect("every generator assigned")).collect())
}

/// `w ↦ ⟨v, π(w) v⟩` on all words up to `degree`, tabulated by extending prefixes.
fn vector_state(algebra: &FacedAlgebra, pi: &[Matrix], v: &[Scalar], degree: usize) -> Result<Vec<(Word, Scalar)>> {
    // π(w)v for w = g·w' is π(g)(π(w')v), so extend on the left
    let mut out = Vec::new();
    let mut frontier: Vec<(Vec<GenId>, Vec<Scalar>)> = vec![(Vec::new(), v.to_vec())];
    for _ in 0..degree {
        let mut next = Vec::with_capacity(frontier.len() * algebra.len());
        for (word, vec_w) in &frontier {
            for g in 0..algebra.len() as GenId {
                let mut letters = Vec::with_capacity(word.len() + 1);
                letters.push(g);
                letters.extend_from_slice(word);
                let image = mat_vec(&pi[g as usize], vec_w);
                out.push((Word::new(letters.clone())?, inner(v, &image)));
                next.push((letters, image));
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Options for [`sample_generating_functional`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    pub components: usize,
    pub degree: usize,
    pub rep_dim: usize,
    /// Adds a random hermitian functional supported on single letters.
    pub drift: bool,
}

/// `ψ_k(a) = v_k* π_k(a) v_k (+ ℓ_k(a))`, independently per component; hermitian and
/// conditionally positive by construction.
pub fn sample_generating_functional(seed: u64, algebra: &FacedAlgebra, options: SampleOptions) -> Result<Functional> {
    if !algebra.has_star() {
        return Err(Error::MissingStar);
    }
    if options.rep_dim == 0 {
        return Err(Error::InvalidArgument("representation dimension must be positive".into()));
    }
    let mut rng = seeded(seed);
    let d = options.components;
    let mut psi = Functional::zero(algebra, d, options.degree);
    for k in 1..=d {
        let pi = random_representation(&mut rng, algebra, options.rep_dim)?;
        let v: Vec<Scalar> = (0..options.rep_dim).map(|_| small_scalar(&mut rng, 2)).collect();
        for (w, value) in vector_state(algebra, &pi, &v, options.degree)? {
            psi.set_component(w, k, value)?;
        }
        if options.drift && coin(&mut rng) {
            let mut seen = vec![false; algebra.len()];
            for g in 0..algebra.len() as GenId {
                if seen[g as usize] {
                    continue;
                }
                let s = algebra.star_of(g)?;
                let l = if s == g { small_real(&mut rng, 2) } else { small_scalar(&mut rng, 2) };
                let w = Word::letter(g);
                let current = psi.moment_component(k, &[g])?;
                psi.set_component(w, k, &current + &l)?;
                if s != g {
                    let current = psi.moment_component(k, &[s])?;
                    psi.set_component(Word::letter(s), k, &current + &l.conj())?;
                    seen[s as usize] = true;
                }
                seen[g as usize] = true;
            }
        }
    }
    Ok(psi)
}

/// `φ_k(a) = ⟨e₁, π_k(a) e₁⟩`; its unitization is a vector state, hence positive.
pub fn sample_restricted_state(seed: u64, algebra: &FacedAlgebra, components: usize, degree: usize, rep_dim: usize) -> Result<Functional> {
    if !algebra.has_star() {
        return Err(Error::MissingStar);
    }
    if rep_dim == 0 {
        return Err(Error::InvalidArgument("representation dimension must be positive".into()));
    }
    let mut rng = seeded(seed);
    let mut phi = Functional::zero(algebra, components, degree);
    let mut e1 = vec![Scalar::zero(); rep_dim];
    e1[0] = Scalar::one();
    for k in 1..=components {
        let pi = random_representation(&mut rng, algebra, rep_dim)?;
        for (w, value) in vector_state(algebra, &pi, &e1, degree)? {
            phi.set_component(w, k, value)?;
        }
    }
    Ok(phi)
}
