//! The invariant battery behind `uniprod selftest`, sized to finish in seconds.

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use uniprod_core::exponentials::{check_derivative_identity, check_semigroup_law, exp_dual, trotter};
use uniprod_core::lachs::{check_intertwine, extract_sigma, render_tensor, symword, DroppedTermSigma, InducedBialgebra, ProductSigma};
use uniprod_core::positivity::{psd_exact, quadratic_form, sample_generating_functional, schoenberg_suite, SampleOptions};
use uniprod_core::random::{index_below, seeded, small_scalar};
use uniprod_core::universal_products::{check_axioms, convolve, AxiomConfig, CorruptedFree, ProductFunctional, RandomFunctional};
use uniprod_core::{BuiltinProduct, DualSemigroup, FacedAlgebra, FreeProduct, Functional, LawVerdict, Moments, Rational, Result, Scalar};

use crate::report::{Report, Verdict};

type Check = fn() -> Result<Vec<LawVerdict>>;

const CHECKS: [(&str, Check); 10] = [
    ("free product golden formula", free_golden),
    ("free sigma golden tensor", sigma_golden),
    ("universal product axioms", axioms),
    ("mutations are detected", mutations),
    ("dual semigroup laws", semigroup_laws),
    ("induced comultiplication and intertwining", lachs_laws),
    ("exponentials", exponentials),
    ("Trotter rate", trotter_rate),
    ("Schoenberg harness", schoenberg),
    ("exact PSD witnesses", psd_witnesses),
];

pub fn run() -> Result<Report> {
    let outcomes: Vec<Vec<LawVerdict>> = CHECKS.par_iter().map(|(_, check)| check()).collect::<Result<_>>()?;
    let mut results = Map::new();
    let mut verdicts = Vec::new();
    for ((name, _), laws) in CHECKS.iter().zip(&outcomes) {
        results.insert((*name).into(), json!(laws.iter().all(LawVerdict::passed)));
        verdicts.extend(laws.iter().map(|l| {
            let mut v = Verdict::from_law(l);
            v.law = format!("{name}: {}", v.law);
            v
        }));
    }
    Ok(Report::new("selftest", None, Map::new(), Value::Object(results), verdicts))
}

fn x_semigroup() -> DualSemigroup {
    DualSemigroup::primitive(&FacedAlgebra::single_self_adjoint("x")).expect("valid presentation")
}

fn ab() -> (FacedAlgebra, FacedAlgebra, FreeProduct) {
    let a = FacedAlgebra::with_star(1, &[("a1", 1), ("a2", 1)], &[]).expect("valid presentation");
    let b = FacedAlgebra::with_star(1, &[("b1", 1), ("b2", 1)], &[]).expect("valid presentation");
    let free = FreeProduct::new(&[&a, &b]).expect("valid factors");
    (a, b, free)
}

fn free_golden() -> Result<Vec<LawVerdict>> {
    let (a, b, free) = ab();
    let w = free.algebra().parse_word("a1@1 b1@2 a2@1 b2@2")?;
    let mut v = LawVerdict::new("φ₁⊙φ₂(a1 b1 a2 b2)");
    for seed in 0..20 {
        let p1 = RandomFunctional::new(&a, 1, 2 * seed);
        let p2 = RandomFunctional::new(&b, 1, 2 * seed + 1);
        let f = |phi: &dyn Moments, l: &[u32]| -> Result<Scalar> { phi.moment_component(1, l) };
        let expected = &(&(&f(&p1, &[0, 1])? * &f(&p2, &[0])?) * &f(&p2, &[1])?)
            + &(&(&(&f(&p1, &[0])? * &f(&p1, &[1])?) * &f(&p2, &[0, 1])?)
                - &(&(&(&f(&p1, &[0])? * &f(&p1, &[1])?) * &f(&p2, &[0])?) * &f(&p2, &[1])?));
        let got = ProductFunctional::new(&BuiltinProduct::Free, &p1, &p2)?.moment_component(1, w.letters())?;
        v.record(got == expected, || format!("seed {seed}: {got} vs {expected}"));
    }
    Ok(vec![v])
}

pub const SIGMA_GOLDEN: &str = "(a1·a2) ⊗ b1 b2 + a1 a2 ⊗ (b1·b2) - (a1·a2) ⊗ (b1·b2)";

fn sigma_golden() -> Result<Vec<LawVerdict>> {
    let (a, b, free) = ab();
    let w = free.algebra().parse_word("a1@1 b1@2 a2@1 b2@2")?;
    let rendered = render_tensor(&a, &b, &extract_sigma(&BuiltinProduct::Free, &free, 1, &symword([(1, w)]))?, 1);
    let mut v = LawVerdict::new("σ(a1 b1 a2 b2)");
    v.record(rendered == SIGMA_GOLDEN, || rendered.clone());
    Ok(vec![v])
}

fn axioms() -> Result<Vec<LawVerdict>> {
    let mut out = Vec::new();
    for p in BuiltinProduct::ALL {
        let report = check_axioms(&p, AxiomConfig::new(p.natural_components(), 10, 5, 1))?;
        out.extend(report.laws().into_iter().cloned().map(|mut l| {
            l.law = format!("{p} {}", l.law);
            l
        }));
    }
    Ok(out)
}

/// Deliberately broken products and σ must be caught.
fn mutations() -> Result<Vec<LawVerdict>> {
    let corrupted = check_axioms(&CorruptedFree, AxiomConfig::new(1, 10, 5, 1))?;
    let mut caught = LawVerdict::new("corrupted free product fails associativity");
    caught.record(!corrupted.associativity.passed(), || "associativity passed".into());

    let ds = DualSemigroup::primitive(&FacedAlgebra::with_star(1, &[("v", 1), ("w", 1)], &[])?)?;
    let b = ds.algebra().clone();
    let p1 = Functional::materialize(&RandomFunctional::new(&b, 1, 1), 3)?;
    let p2 = Functional::materialize(&RandomFunctional::new(&b, 1, 2), 3)?;
    let conv = convolve(&BuiltinProduct::Free, &ds, &p1, &p2, None)?;
    let inner = ProductSigma::new(&BuiltinProduct::Free, ds.pair().clone(), 1)?;
    let broken = InducedBialgebra::with_sigma(&ds, 1, Box::new(DroppedTermSigma { inner, free: ds.pair().clone() }));
    let mut dropped = LawVerdict::new("σ with a dropped term fails intertwining");
    dropped.record(!check_intertwine(&broken, &conv, &p1, &p2, 3)?.passed(), || "intertwining passed".into());
    Ok(vec![caught, dropped])
}

fn semigroup_laws() -> Result<Vec<LawVerdict>> {
    let ds = DualSemigroup::primitive(&FacedAlgebra::with_star(1, &[("y", 1), ("z", 1)], &[("y", "z")])?)?;
    Ok(vec![ds.check_counit()?, ds.check_coassoc()?, ds.check_star_compatibility()?, ds.check_bracketing(4)?])
}

fn lachs_laws() -> Result<Vec<LawVerdict>> {
    let ds = DualSemigroup::primitive(&FacedAlgebra::with_star(1, &[("v", 1), ("w", 1)], &[])?)?;
    let b = ds.algebra().clone();
    let mut out = Vec::new();
    for p in BuiltinProduct::ALL {
        let d = p.natural_components();
        let ib = InducedBialgebra::new(&p, &ds, d)?;
        out.extend(ib.check_laws(3)?.into_iter().map(|mut l| {
            l.law = format!("{p} {}", l.law);
            l
        }));
        let p1 = Functional::materialize(&RandomFunctional::new(&b, d, 1), 3)?;
        let p2 = Functional::materialize(&RandomFunctional::new(&b, d, 2), 3)?;
        let conv = convolve(&p, &ds, &p1, &p2, None)?;
        let mut l = check_intertwine(&ib, &conv, &p1, &p2, 3)?;
        l.law = format!("{p} {}", l.law);
        out.push(l);
    }
    Ok(out)
}

/// Pair partitions of `0..n` that `keep` accepts, counted by brute force.
fn pairings(n: usize, keep: fn(&[(usize, usize)]) -> bool) -> i64 {
    fn go(free: Vec<usize>, acc: &mut Vec<(usize, usize)>, keep: fn(&[(usize, usize)]) -> bool) -> i64 {
        let Some((&first, rest)) = free.split_first() else {
            return i64::from(keep(acc));
        };
        let mut total = 0;
        for i in 0..rest.len() {
            let mut remaining = rest.to_vec();
            let partner = remaining.remove(i);
            acc.push((first, partner));
            total += go(remaining, acc, keep);
            acc.pop();
        }
        total
    }
    go((0..n).collect(), &mut Vec::new(), keep)
}

fn exponentials() -> Result<Vec<LawVerdict>> {
    let ds = x_semigroup();
    let mut psi = Functional::zero(ds.algebra(), 1, 4);
    psi.set(ds.algebra().parse_word("x x")?, vec![Scalar::one()])?;
    let all: fn(&[(usize, usize)]) -> bool = |_| true;
    let noncrossing: fn(&[(usize, usize)]) -> bool =
        |p| p.iter().all(|&(a, b)| p.iter().all(|&(c, e)| !(a < c && c < b && b < e)));
    let interval: fn(&[(usize, usize)]) -> bool = |p| p.iter().all(|&(a, b)| b == a + 1);
    let mut out = Vec::new();
    let mut oracle = LawVerdict::new("semicircle moments match pair-partition counts");
    for (p, keep) in [(BuiltinProduct::Tensor, all), (BuiltinProduct::Free, noncrossing), (BuiltinProduct::Boolean, interval)] {
        let e = exp_dual(&p, &ds, &psi, 4)?.value()?;
        for n in 1..=4 {
            let got = e.moment_component(1, &vec![0; n])?;
            let expected = Scalar::from_integer(pairings(n, keep));
            oracle.record(got == expected, || format!("{p} x^{n}: {got} vs {expected}"));
        }
    }
    out.push(oracle);
    for p in BuiltinProduct::ALL {
        let options = SampleOptions { components: p.natural_components(), degree: 3, rep_dim: 2, drift: true };
        let psi = sample_generating_functional(3, ds.algebra(), options)?;
        let exp = exp_dual(&p, &ds, &psi, 3)?;
        for mut l in [check_semigroup_law(&p, &ds, &exp)?, check_derivative_identity(&exp, &psi)?] {
            l.law = format!("{p} {}", l.law);
            out.push(l);
        }
    }
    Ok(out)
}

fn trotter_rate() -> Result<Vec<LawVerdict>> {
    let ds = x_semigroup();
    let mut psi = Functional::zero(ds.algebra(), 1, 4);
    psi.set(ds.algebra().parse_word("x x")?, vec![Scalar::one()])?;
    let x4 = ds.algebra().parse_word("x x x x")?;
    let (_, runs) = trotter(&BuiltinProduct::Free, &ds, &psi, &[1, 2, 4, 8], 4)?;
    let mut v = LawVerdict::new("free semicircle deviation at x⁴ is 1/n");
    for r in &runs {
        let expected = Rational::new(1, r.n as i64)?;
        v.record(r.deviation_at(&x4) == expected, || format!("n = {}: {}", r.n, r.deviation_at(&x4)));
    }
    Ok(vec![v])
}

fn schoenberg() -> Result<Vec<LawVerdict>> {
    let ds = x_semigroup();
    let times = [Rational::new(1, 10)?, Rational::one(), Rational::from(10)];
    let mut v = LawVerdict::new("exp(tψ) is a restricted state for sampled ψ");
    for p in BuiltinProduct::ALL {
        for seed in 0..3 {
            let options = SampleOptions { components: p.natural_components(), degree: 4, rep_dim: 1 + seed as usize, drift: true };
            let psi = sample_generating_functional(seed, ds.algebra(), options)?;
            let report = schoenberg_suite(&p, &ds, &psi, &times, 4)?;
            v.record(report.passed(), || format!("{p} seed {seed}"));
        }
    }
    Ok(vec![v])
}

fn psd_witnesses() -> Result<Vec<LawVerdict>> {
    let mut rng = seeded(11);
    let mut v = LawVerdict::new("every not-PSD witness has v*Gv < 0");
    for _ in 0..50 {
        let n = 1 + index_below(&mut rng, 6);
        let b: Vec<Vec<Scalar>> = (0..n).map(|_| (0..n).map(|_| small_scalar(&mut rng, 3)).collect()).collect();
        // G = B + B*, indefinite in general
        let g: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| &b[i][j] + &b[j][i].conj()).collect()).collect();
        let verdict = psd_exact(&g)?;
        if let Some(w) = &verdict.witness {
            let value = quadratic_form(&g, w);
            v.record(value.is_real() && value.re.is_negative(), || format!("{g:?} with {w:?}"));
        }
    }
    Ok(vec![v])
}
