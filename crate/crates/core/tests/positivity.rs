//! Exact PSD decisions against sampling, and positivity of convolution powers of states.

use uniprod_core::positivity::{is_restricted_state, psd_exact, quadratic_form, sample_restricted_state};
use uniprod_core::random::{index_below, seeded, small_scalar};
use uniprod_core::universal_products::convolve_power;
use uniprod_core::{BuiltinProduct, DualSemigroup, FacedAlgebra, Scalar};

/// Random Hermitian `Σ ±b b*`, PSD roughly half of the time.
fn random_hermitian(seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = seeded(seed);
    let n = 1 + index_below(&mut rng, 5);
    let mut g = vec![vec![Scalar::zero(); n]; n];
    for r in 0..1 + index_below(&mut rng, n) {
        let b: Vec<Scalar> = (0..n).map(|_| small_scalar(&mut rng, 2)).collect();
        let sign = Scalar::from_integer(if r == 0 && seed % 2 == 1 { -1 } else { 1 });
        for i in 0..n {
            for j in 0..n {
                g[i][j] += &(&(&b[i] * &b[j].conj()) * &sign);
            }
        }
    }
    g
}

#[test]
fn no_sampled_vector_refutes_a_psd_verdict() {
    for seed in 0..40 {
        let g = random_hermitian(seed);
        let verdict = psd_exact(&g).unwrap();
        if let Some(w) = &verdict.witness {
            assert!(quadratic_form(&g, w).re.is_negative(), "seed {seed}");
            continue;
        }
        let mut rng = seeded(1000 + seed);
        for _ in 0..250 {
            let v: Vec<Scalar> = (0..g.len()).map(|_| small_scalar(&mut rng, 5)).collect();
            assert!(!quadratic_form(&g, &v).re.is_negative(), "seed {seed}");
        }
    }
}

#[test]
fn convolution_powers_of_states_are_states() {
    let x = FacedAlgebra::single_self_adjoint("x");
    let ds = DualSemigroup::primitive(&x).unwrap();
    for product in BuiltinProduct::ALL {
        for seed in 0..4 {
            let phi = sample_restricted_state(seed, &x, product.natural_components(), 4, 1 + seed as usize % 3).unwrap();
            for n in 1..=4 {
                let power = convolve_power(&product, &ds, &phi, n).unwrap();
                let report = is_restricted_state(&power, 2).unwrap();
                assert!(report.passed(), "{product} seed {seed} n {n}: {:?}", report.failure());
            }
        }
    }
}
