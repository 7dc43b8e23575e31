//! Semicircle-generator exponentials against pair-partition counts computed by brute force.

use uniprod_core::exponentials::exp_dual;
use uniprod_core::{BuiltinProduct, DualSemigroup, FacedAlgebra, Functional, Moments, Rational, Scalar};

type Pairing = Vec<(usize, usize)>;

/// Every pair partition of `0..n`, each pair stored as `(left, right)`.
fn pairings(n: usize) -> Vec<Pairing> {
    fn go(free: &[usize], acc: &mut Pairing, out: &mut Vec<Pairing>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(acc.clone());
            return;
        };
        for (i, &partner) in rest.iter().enumerate() {
            let mut remaining = rest.to_vec();
            remaining.remove(i);
            acc.push((first, partner));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        go(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    }
    out
}

fn crosses(p: (usize, usize), q: (usize, usize)) -> bool {
    (p.0 < q.0 && q.0 < p.1 && p.1 < q.1) || (q.0 < p.0 && p.0 < q.1 && q.1 < p.1)
}

fn nests(outer: (usize, usize), inner: (usize, usize)) -> bool {
    outer.0 < inner.0 && inner.1 < outer.1
}

fn is_noncrossing(p: &Pairing) -> bool {
    p.iter().all(|&a| p.iter().all(|&b| !crosses(a, b)))
}

fn is_interval(p: &Pairing) -> bool {
    p.iter().all(|&(l, r)| r == l + 1)
}

/// Fraction of orderings of the pairs in which every pair comes after the pairs enclosing it.
fn monotone_weight(p: &Pairing) -> Rational {
    fn count(p: &Pairing, placed: &mut Vec<bool>) -> u64 {
        if placed.iter().all(|&b| b) {
            return 1;
        }
        let mut total = 0;
        for i in 0..p.len() {
            let ready = !placed[i] && (0..p.len()).all(|j| placed[j] || !nests(p[j], p[i]));
            if ready {
                placed[i] = true;
                total += count(p, placed);
                placed[i] = false;
            }
        }
        total
    }
    let good = count(p, &mut vec![false; p.len()]);
    let all: u64 = (1..=p.len() as u64).product();
    Rational::new(good as i64, all as i64).unwrap()
}

fn semicircle(degree: usize) -> (DualSemigroup, Functional) {
    let x = FacedAlgebra::single_self_adjoint("x");
    let ds = DualSemigroup::primitive(&x).unwrap();
    let mut psi = Functional::zero(&x, 1, degree);
    psi.set(x.parse_word("x x").unwrap(), vec![Scalar::one()]).unwrap();
    (ds, psi)
}

fn exp_moment(product: BuiltinProduct, n: usize, degree: usize) -> Scalar {
    let (ds, psi) = semicircle(degree);
    let e = exp_dual(&product, &ds, &psi, degree).unwrap().value().unwrap();
    e.moment(&vec![0; n]).unwrap().remove(0)
}

fn count(n: usize, keep: impl Fn(&Pairing) -> bool) -> Scalar {
    Scalar::from_integer(pairings(n).iter().filter(|p| keep(p)).count() as i64)
}

#[test]
fn oracle_counts_on_four_points() {
    assert_eq!(count(4, |_| true), Scalar::from_integer(3));
    assert_eq!(count(4, is_noncrossing), Scalar::from_integer(2));
    assert_eq!(count(4, is_interval), Scalar::from_integer(1));
    assert_eq!(count(6, |_| true), Scalar::from_integer(15));
    assert_eq!(count(6, is_noncrossing), Scalar::from_integer(5));
}

#[test]
fn tensor_counts_all_pairings() {
    for n in 1..=6 {
        assert_eq!(exp_moment(BuiltinProduct::Tensor, n, 6), count(n, |_| true), "x^{n}");
    }
}

#[test]
fn free_counts_noncrossing_pairings() {
    for n in 1..=6 {
        assert_eq!(exp_moment(BuiltinProduct::Free, n, 6), count(n, is_noncrossing), "x^{n}");
    }
}

#[test]
fn boolean_counts_interval_pairings() {
    for n in 1..=6 {
        assert_eq!(exp_moment(BuiltinProduct::Boolean, n, 6), count(n, is_interval), "x^{n}");
    }
}

#[test]
fn monotone_weights_noncrossing_pairings_by_nesting_orders() {
    for product in [BuiltinProduct::Monotone, BuiltinProduct::Antimonotone] {
        for n in 1..=6 {
            let mut expected = Rational::zero();
            for p in pairings(n).iter().filter(|p| is_noncrossing(p)) {
                expected = &expected + &monotone_weight(p);
            }
            assert_eq!(exp_moment(product, n, 6), Scalar::real(expected), "{product} x^{n}");
        }
    }
}
