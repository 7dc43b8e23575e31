//! Acceptance battery: one PASS/FAIL line per criterion, then a single assertion.
//!
//! Run with `cargo test -p uniprod --test acceptance -- --nocapture` to see the lines.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use uniprod_core::exponentials::{check_derivative_identity, check_semigroup_law, exp_dual, trotter};
use uniprod_core::lachs::{check_intertwine, extract_sigma, render_tensor, symword, InducedBialgebra};
use uniprod_core::positivity::{psd_exact, quadratic_form, sample_generating_functional, schoenberg_suite, SampleOptions};
use uniprod_core::random::{index_below, int_in, seeded, small_scalar};
use uniprod_core::universal_products::{check_axioms, convolve, AxiomConfig, ProductFunctional, RandomFunctional};
use uniprod_core::{BuiltinProduct, DualSemigroup, FacedAlgebra, FreeProduct, Functional, Moments, Rational, Scalar};

/// Outcome of one criterion: pass flag and a one-line detail.
type Outcome = (bool, String);

/// Predicate on a pair partition, pairs stored as `(left, right)`.
type Keep = dyn Fn(&[(usize, usize)]) -> bool;

fn ab() -> (FacedAlgebra, FacedAlgebra, FreeProduct) {
    let a = FacedAlgebra::with_star(1, &[("a1", 1), ("a2", 1)], &[]).unwrap();
    let b = FacedAlgebra::with_star(1, &[("b1", 1), ("b2", 1)], &[]).unwrap();
    let free = FreeProduct::new(&[&a, &b]).unwrap();
    (a, b, free)
}

fn semicircle() -> (DualSemigroup, Functional) {
    let x = FacedAlgebra::single_self_adjoint("x");
    let ds = DualSemigroup::primitive(&x).unwrap();
    let mut psi = Functional::zero(&x, 1, 4);
    psi.set(x.parse_word("x x").unwrap(), vec![Scalar::one()]).unwrap();
    (ds, psi)
}

fn golden_free_product() -> Outcome {
    let (a, b, free) = ab();
    let w = free.algebra().parse_word("a1@1 b1@2 a2@1 b2@2").unwrap();
    let mut failures = 0;
    for seed in 0..20 {
        let p1 = Functional::materialize(&RandomFunctional::new(&a, 1, 100 + seed), 2).unwrap();
        let p2 = Functional::materialize(&RandomFunctional::new(&b, 1, 200 + seed), 2).unwrap();
        let f = |phi: &Functional, l: &[u32]| phi.moment_component(1, l).unwrap();
        let (a1, a2, a12) = (f(&p1, &[0]), f(&p1, &[1]), f(&p1, &[0, 1]));
        let (b1, b2, b12) = (f(&p2, &[0]), f(&p2, &[1]), f(&p2, &[0, 1]));
        let expected = &(&(&a12 * &b1) * &b2) + &(&(&(&a1 * &a2) * &b12) - &(&(&(&a1 * &a2) * &b1) * &b2));
        let got = ProductFunctional::new(&BuiltinProduct::Free, &p1, &p2).unwrap().moment_component(1, w.letters()).unwrap();
        failures += usize::from(got != expected);
    }
    (failures == 0, format!("20 random tables, {failures} mismatches"))
}

fn golden_sigma() -> Outcome {
    let (a, b, free) = ab();
    let w = free.algebra().parse_word("a1@1 b1@2 a2@1 b2@2").unwrap();
    let t = extract_sigma(&BuiltinProduct::Free, &free, 1, &symword([(1, w)])).unwrap();
    let rendered = render_tensor(&a, &b, &t, 1);
    (rendered == "(a1·a2) ⊗ b1 b2 + a1 a2 ⊗ (b1·b2) - (a1·a2) ⊗ (b1·b2)", rendered)
}

fn axiom_battery() -> Outcome {
    let mut failed = Vec::new();
    for p in BuiltinProduct::ALL {
        let report = check_axioms(&p, AxiomConfig::new(p.natural_components(), 50, 5, 7)).unwrap();
        if !report.passed() {
            failed.push(format!("{p}: {:?}", report.laws().iter().find(|l| !l.passed())));
        }
    }
    (failed.is_empty(), format!("six products, 50 trials, words to length 5; failures {failed:?}"))
}

fn intertwining() -> Outcome {
    let b = FacedAlgebra::with_star(1, &[("v", 1), ("w", 1)], &[]).unwrap();
    let ds = DualSemigroup::primitive(&b).unwrap();
    let mut failed = Vec::new();
    for p in BuiltinProduct::ALL {
        let d = p.natural_components();
        let ib = InducedBialgebra::new(&p, &ds, d).unwrap();
        for seed in 0..20 {
            let p1 = Functional::materialize(&RandomFunctional::new(&b, d, 2 * seed), 4).unwrap();
            let p2 = Functional::materialize(&RandomFunctional::new(&b, d, 2 * seed + 1), 4).unwrap();
            let conv = convolve(&p, &ds, &p1, &p2, None).unwrap();
            let verdict = check_intertwine(&ib, &conv, &p1, &p2, 4).unwrap();
            if !verdict.passed() {
                failed.push(format!("{p} seed {seed}: {verdict}"));
            }
        }
    }
    (failed.is_empty(), format!("six products, 20 pairs, SymWords to degree 4; failures {failed:?}"))
}

/// Pair partitions of `0..n` accepted by `keep`, by brute-force enumeration.
fn count_pairings(n: usize, keep: &Keep) -> i64 {
    fn go(free: Vec<usize>, acc: &mut Vec<(usize, usize)>, keep: &Keep) -> i64 {
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

fn exponential_oracles() -> Outcome {
    let all = |_: &[(usize, usize)]| true;
    let noncrossing = |p: &[(usize, usize)]| p.iter().all(|&(a, b)| p.iter().all(|&(c, e)| !(a < c && c < b && b < e)));
    let interval = |p: &[(usize, usize)]| p.iter().all(|&(a, b)| b == a + 1);
    let oracles: [(BuiltinProduct, &Keep); 3] =
        [(BuiltinProduct::Free, &noncrossing), (BuiltinProduct::Tensor, &all), (BuiltinProduct::Boolean, &interval)];
    let (ds, psi) = semicircle();
    let mut ok = true;
    let mut seen = Vec::new();
    for (p, keep) in oracles {
        let e = exp_dual(&p, &ds, &psi, 4).unwrap().value().unwrap();
        let x2 = e.moment_component(1, &[0, 0]).unwrap();
        let x4 = e.moment_component(1, &[0, 0, 0, 0]).unwrap();
        ok &= x2 == Scalar::from_integer(count_pairings(2, keep)) && x2 == Scalar::one();
        ok &= x4 == Scalar::from_integer(count_pairings(4, keep));
        seen.push(format!("{p} x⁴ ↦ {}", x4.re));
    }
    (ok, seen.join(", "))
}

fn trotter_rate() -> Outcome {
    let (ds, psi) = semicircle();
    let x4 = ds.algebra().parse_word("x x x x").unwrap();
    let (_, runs) = trotter(&BuiltinProduct::Free, &ds, &psi, &[1, 2, 4, 8, 16, 32], 4).unwrap();
    let devs: Vec<Rational> = runs.iter().map(|r| r.deviation_at(&x4)).collect();
    let decreasing = devs.windows(2).all(|p| p[1] < p[0]);
    let (lo, hi) = (Rational::new(2, 5).unwrap(), Rational::new(3, 5).unwrap());
    let ratios_ok = runs.windows(2).filter(|p| p[0].n >= 8).all(|p| {
        let ratio = p[1].deviation_at(&x4).checked_div(&p[0].deviation_at(&x4)).unwrap();
        lo <= ratio && ratio <= hi
    });
    (decreasing && ratios_ok, format!("deviations {:?}", devs.iter().map(Rational::to_string).collect::<Vec<_>>()))
}

fn schoenberg_harness() -> Outcome {
    let (ds, _) = semicircle();
    let times = [Rational::new(1, 10).unwrap(), Rational::one(), Rational::from(10)];
    let mut failures = Vec::new();
    let mut runs = 0;
    for p in BuiltinProduct::ALL {
        for seed in 0..20u64 {
            let options = SampleOptions { components: p.natural_components(), degree: 4, rep_dim: 1 + seed as usize % 3, drift: true };
            let psi = sample_generating_functional(seed, ds.algebra(), options).unwrap();
            let report = schoenberg_suite(&p, &ds, &psi, &times, 4).unwrap();
            runs += 1;
            if !report.passed() {
                failures.push(format!("{p} seed {seed}"));
            }
        }
    }
    (failures.is_empty(), format!("{runs} generators × 3 times at half-degree 2; failures {failures:?}"))
}

/// Smallest eigenvalue of `G = A + iB` through the real embedding `[[A, -B], [B, A]]`.
fn min_eigenvalue(g: &[Vec<Scalar>]) -> f64 {
    let n = g.len();
    let m = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let (re, im) = g[r % n][c % n].to_f64_pair();
        match (r < n, c < n) {
            (true, true) | (false, false) => re,
            (true, false) => -im,
            (false, true) => im,
        }
    });
    m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

fn psd_soundness() -> Outcome {
    let mut rng = seeded(2024);
    let (mut agree, mut psd_count, mut witnesses_ok) = (0, 0, true);
    for _ in 0..200 {
        let n = 1 + index_below(&mut rng, 12);
        let rank = 1 + index_below(&mut rng, n);
        let negative = index_below(&mut rng, 2) == 0;
        let mut g = vec![vec![Scalar::zero(); n]; n];
        // Σ ±b b*: PSD (often singular) unless a negative term is mixed in
        for r in 0..rank {
            let b: Vec<Scalar> = (0..n).map(|_| small_scalar(&mut rng, 2)).collect();
            let sign = if negative && r == 0 { -int_in(&mut rng, 1, 2) } else { 1 };
            for i in 0..n {
                for j in 0..n {
                    g[i][j] += &(&(&b[i] * &b[j].conj()) * &Scalar::from_integer(sign));
                }
            }
        }
        let verdict = psd_exact(&g).unwrap();
        let float_psd = min_eigenvalue(&g) >= -1e-9;
        agree += usize::from(verdict.psd == float_psd);
        psd_count += usize::from(verdict.psd);
        if let Some(w) = &verdict.witness {
            let value = quadratic_form(&g, w);
            witnesses_ok &= value.is_real() && value.re.is_negative();
        }
    }
    (agree == 200 && witnesses_ok, format!("{agree}/200 agree with float eigenvalues ({psd_count} PSD), witnesses verified: {witnesses_ok}"))
}

fn structural_laws() -> Outcome {
    let x = FacedAlgebra::single_self_adjoint("x");
    let ds = DualSemigroup::primitive(&x).unwrap();
    let mut failed = Vec::new();
    for p in BuiltinProduct::ALL {
        let d = p.natural_components();
        let ib = InducedBialgebra::new(&p, &ds, d).unwrap();
        let [counit, coassoc, _] = ib.check_laws(4).unwrap();
        let options = SampleOptions { components: d, degree: 4, rep_dim: 2, drift: true };
        let psi = sample_generating_functional(9, &x, options).unwrap();
        let exp = exp_dual(&p, &ds, &psi, 4).unwrap();
        let laws = [counit, coassoc, check_semigroup_law(&p, &ds, &exp).unwrap(), check_derivative_identity(&exp, &psi).unwrap()];
        failed.extend(laws.iter().filter(|l| !l.passed()).map(|l| format!("{p}: {l}")));
    }
    (failed.is_empty(), format!("Δ counit, Δ coassociativity, semigroup law, derivative at zero; failures {failed:?}"))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("golden vector A: free product on a1 b1 a2 b2", golden_free_product),
        ("golden vector B: free σ on a1 b1 a2 b2", golden_sigma),
        ("axiom battery", axiom_battery),
        ("intertwining of convolutions", intertwining),
        ("exponentials of the semicircle generator", exponential_oracles),
        ("Trotter convergence rate", trotter_rate),
        ("Schoenberg harness", schoenberg_harness),
        ("PSD decision soundness", psd_soundness),
        ("structural laws", structural_laws),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| (false, "panicked".into()));
        let elapsed = start.elapsed();
        let within = elapsed < Duration::from_secs(60);
        let status = if ok && within { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} [{:.1}s] {detail}", i + 1, elapsed.as_secs_f64());
        all &= ok && within;
    }
    assert!(all, "some acceptance criteria failed");
}
