//! Algebraic laws on random inputs.

use proptest::prelude::*;

use uniprod_core::dual_semigroup::render;
use uniprod_core::exponentials::exp_dual;
use uniprod_core::faced_algebra::multiply;
use uniprod_core::lachs::{character, extract_sigma, symword};
use uniprod_core::positivity::{hermitian_violation, sample_generating_functional, SampleOptions};
use uniprod_core::universal_products::{ProductFunctional, RandomFunctional};
use uniprod_core::{
    BuiltinProduct, DualSemigroup, FacedAlgebra, FacedHomomorphism, FreeProduct, GenId, Moments, NCPolynomial,
    Polynomial, Rational, Scalar, TimeVar, Word,
};

/// `y* = z`, `x` self-adjoint, `w` self-adjoint in face 2.
fn starred() -> FacedAlgebra {
    FacedAlgebra::with_star(2, &[("x", 1), ("y", 1), ("z", 1), ("w", 2)], &[("y", "z")]).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(re, im)| Scalar::new(re, im))
}

fn word(generators: GenId, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..generators, 1..=max_len).prop_map(|letters| Word::new(letters).unwrap())
}

fn nc_polynomial(generators: GenId, max_len: usize) -> impl Strategy<Value = NCPolynomial> {
    prop::collection::vec((word(generators, max_len), scalar()), 0..4)
        .prop_map(|terms| NCPolynomial::from_terms(terms).unwrap())
}

fn time_polynomial() -> impl Strategy<Value = Polynomial<TimeVar>> {
    prop::collection::vec((0usize..3, 0usize..3, scalar()), 0..4).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (a, b, c) in terms {
            let mono = uniprod_core::coefficients::Monomial::from_vars([vec![TimeVar(0); a], vec![TimeVar(1); b]].concat());
            p.add_term(mono, c);
        }
        p
    })
}

/// Face-preserving substitution into `target`, one image per generator of `source`.
fn hom_into(source: &FacedAlgebra, target: &FacedAlgebra, picks: &[(usize, Scalar)]) -> FacedHomomorphism {
    let images = (0..source.len() as GenId)
        .map(|g| {
            let face = source.face(g);
            let same: Vec<GenId> = (0..target.len() as GenId).filter(|&h| target.face(h) == face).collect();
            let (i, c) = &picks[g as usize % picks.len()];
            let letters = vec![same[i % same.len()], same[(i / 2) % same.len()]];
            let mut p = NCPolynomial::letter(same[(i + 1) % same.len()]);
            p.add_term(Word::new(letters).unwrap(), c.clone()).unwrap();
            p
        })
        .collect();
    FacedHomomorphism::new(source.clone(), target.clone(), images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_text_round_trips(s in scalar()) {
        prop_assert_eq!(s.to_string().parse::<Scalar>().unwrap(), s.clone());
        prop_assert_eq!(s.re.to_string().parse::<Rational>().unwrap(), s.re);
    }

    #[test]
    fn substitute_is_a_unital_ring_homomorphism(p in time_polynomial(), q in time_polynomial(), s in scalar(), t in scalar()) {
        let env = |v: &TimeVar| Ok(if v.0 == 0 { s.clone() } else { t.clone() });
        let ps = p.substitute(env).unwrap();
        let qs = q.substitute(env).unwrap();
        prop_assert_eq!(p.mul_ref(&q).substitute(env).unwrap(), &ps * &qs);
        let mut sum = p.clone();
        sum.add_assign_ref(&q);
        prop_assert_eq!(sum.substitute(env).unwrap(), &ps + &qs);
        prop_assert_eq!(Polynomial::<TimeVar>::one().substitute(env).unwrap(), Scalar::one());
    }

    #[test]
    fn star_is_an_antimultiplicative_involution(p in nc_polynomial(4, 4), q in nc_polynomial(4, 4)) {
        let a = starred();
        let pq = multiply(&a, &p, &q).unwrap();
        let rhs = multiply(&a, &q.star(&a).unwrap(), &p.star(&a).unwrap()).unwrap();
        prop_assert_eq!(pq.star(&a).unwrap(), rhs);
        prop_assert_eq!(p.star(&a).unwrap().star(&a).unwrap(), p);
    }

    #[test]
    fn alternating_blocks_reassemble(w in word(8, 8)) {
        let a = starred();
        let free = FreeProduct::new(&[&a, &a]).unwrap();
        let blocks = free.alternating_blocks(&w);
        prop_assert!(blocks.windows(2).all(|b| b[0].0 != b[1].0));
        prop_assert_eq!(free.reassemble(&blocks), w);
    }

    #[test]
    fn coproduct_property(
        picks_f in prop::collection::vec((0usize..6, scalar()), 1..4),
        picks_g in prop::collection::vec((0usize..6, scalar()), 1..4),
        w in word(4, 5),
    ) {
        let a = starred();
        let b = FacedAlgebra::with_star(2, &[("u", 2), ("v", 1)], &[]).unwrap();
        let c = starred();
        let f = hom_into(&a, &c, &picks_f);
        let g = hom_into(&b, &c, &picks_g);
        let free = FreeProduct::new(&[&a, &b]).unwrap();
        let h = free.induced(&[&f, &g], &c).unwrap();
        let on_a = h.apply(&free.embedding(&a, 1).unwrap().apply_word(w.letters()).unwrap()).unwrap();
        prop_assert_eq!(on_a, f.apply_word(w.letters()).unwrap());
        let wb = Word::new(w.letters().iter().map(|&l| l % 2).collect()).unwrap();
        let on_b = h.apply(&free.embedding(&b, 2).unwrap().apply_word(wb.letters()).unwrap()).unwrap();
        prop_assert_eq!(on_b, g.apply_word(wb.letters()).unwrap());
    }

    #[test]
    fn primitive_comultiplication_is_star_compatible(p in nc_polynomial(4, 4)) {
        let a = starred();
        let ds = DualSemigroup::primitive(&a).unwrap();
        let pair = ds.pair().algebra();
        let lhs = ds.comultiply(&p).unwrap().star(pair).unwrap();
        let rhs = ds.comultiply(&p.star(&a).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs, "{}", render(pair, &lhs));
    }
}

#[test]
fn character_of_product_factors_through_sigma() {
    let a = FacedAlgebra::plain(1, &[("a", 1)]).unwrap();
    let b = FacedAlgebra::plain(1, &[("b", 1)]).unwrap();
    let free = FreeProduct::new(&[&a, &b]).unwrap();
    let words = free.algebra().words_up_to(5);
    for product in BuiltinProduct::ALL {
        let d = product.natural_components();
        for seed in 0..50u64 {
            let left = RandomFunctional::new(&a, d, 2 * seed);
            let right = RandomFunctional::new(&b, d, 2 * seed + 1);
            let joint = ProductFunctional::new(&product, &left, &right).unwrap();
            let (cl, cr) = (character(&left), character(&right));
            for w in &words {
                for k in 1..=d {
                    let sigma = extract_sigma(&product, &free, d, &symword([(k as u16, w.clone())])).unwrap();
                    assert_eq!(
                        sigma.pair_with(&cl, &cr).unwrap(),
                        joint.moment_component(k, w.letters()).unwrap(),
                        "{product} seed {seed} word {} component {k}",
                        free.algebra().render(w.letters())
                    );
                }
            }
        }
    }
}

#[test]
fn exponentials_of_hermitian_generators_are_hermitian() {
    let algebras = [
        FacedAlgebra::single_self_adjoint("x"),
        FacedAlgebra::with_star(1, &[("y", 1), ("z", 1)], &[("y", "z")]).unwrap(),
    ];
    let times = [Rational::new(1, 10).unwrap(), Rational::new(-7, 3).unwrap(), Rational::from(10)];
    for a in &algebras {
        let ds = DualSemigroup::primitive(a).unwrap();
        for product in BuiltinProduct::ALL {
            let options = SampleOptions { components: product.natural_components(), degree: 4, rep_dim: 2, drift: true };
            let psi = sample_generating_functional(5, a, options).unwrap();
            let exp = exp_dual(&product, &ds, &psi, 4).unwrap();
            for t in &times {
                let phi = exp.at(&Scalar::real(t.clone())).unwrap();
                assert_eq!(hermitian_violation(&phi, 4).unwrap(), None, "{product} t = {t}");
            }
        }
    }
}
