use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::scalar::Scalar;
use super::Ring;
use crate::error::{Error, Result};

/// A multiset of commuting variables, stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial<V>(Vec<V>);

impl<V: Ord + Clone> Monomial<V> {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: V) -> Self {
        Monomial(alloc::vec![v])
    }

    pub fn from_vars(mut vars: Vec<V>) -> Self {
        vars.sort();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[V] {
        &self.0
    }

    pub fn into_vars(self) -> Vec<V> {
        self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of variables counted with multiplicity.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i].clone());
                i += 1;
            } else {
                out.push(other.0[j].clone());
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Exponent of `v` in this monomial.
    pub fn degree_in(&self, v: &V) -> usize {
        self.0.iter().filter(|x| *x == v).count()
    }
}

impl<V: fmt::Display> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl<V: fmt::Debug> fmt::Debug for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Commutative polynomial with Gaussian-rational coefficients in free variables `V`.
///
/// The association table never stores zero coefficients, so equality of polynomials is
/// equality of tables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial<V: Ord> {
    terms: BTreeMap<Monomial<V>, Scalar>,
}

impl<V: Ord + Clone> Default for Polynomial<V> {
    fn default() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }
}

impl<V: Ord + Clone> Polynomial<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Monomial::unit())
    }

    pub fn var(v: V) -> Self {
        Self::term(Scalar::one(), Monomial::var(v))
    }

    pub fn term(c: Scalar, m: Monomial<V>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial<V>, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial<V>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Largest monomial length, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::len).max()
    }

    /// Evaluates under `env`, failing on the first variable it cannot resolve.
    pub fn substitute<F>(&self, env: F) -> Result<Scalar>
    where
        F: FnMut(&V) -> Result<Scalar>,
    {
        self.substitute_into(env)
    }

    /// Ring homomorphism into any coefficient ring `R`.
    pub fn substitute_into<R, F>(&self, mut env: F) -> Result<R>
    where
        R: Ring,
        F: FnMut(&V) -> Result<R>,
    {
        let mut total = R::zero();
        for (m, c) in &self.terms {
            let mut acc = R::from_scalar(c.clone());
            for v in m.vars() {
                if acc.is_zero() {
                    break;
                }
                acc = acc.mul(&env(v)?);
            }
            total = total.add(&acc);
        }
        Ok(total)
    }

    /// Substitutes each variable by a polynomial in other variables.
    pub fn compose<W, F>(&self, mut env: F) -> Polynomial<W>
    where
        W: Ord + Clone,
        F: FnMut(&V) -> Polynomial<W>,
    {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for v in m.vars() {
                acc = acc.mul_ref(&env(v));
            }
            out.add_assign_ref(&acc);
        }
        out
    }

    pub fn map_vars<W: Ord + Clone, F: FnMut(&V) -> W>(&self, mut f: F) -> Polynomial<W> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::from_vars(m.vars().iter().map(&mut f).collect()), c.clone());
        }
        out
    }
}

/// Evaluates `p` under a finite environment, naming the first missing symbol on failure.
pub fn substitute<V>(p: &Polynomial<V>, env: &BTreeMap<V, Scalar>) -> Result<Scalar>
where
    V: Ord + Clone + fmt::Display,
{
    p.substitute(|v| {
        env.get(v).cloned().ok_or_else(|| Error::MissingSymbol(alloc::format!("{v}")))
    })
}

impl<V: Ord + Clone> Add<&Polynomial<V>> for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn add(self, rhs: &Polynomial<V>) -> Polynomial<V> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<V: Ord + Clone> Sub<&Polynomial<V>> for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn sub(self, rhs: &Polynomial<V>) -> Polynomial<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<V: Ord + Clone> Mul<&Polynomial<V>> for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn mul(self, rhs: &Polynomial<V>) -> Polynomial<V> {
        self.mul_ref(rhs)
    }
}

impl<V: Ord + Clone> Neg for &Polynomial<V> {
    type Output = Polynomial<V>;
    fn neg(self) -> Polynomial<V> {
        self.scale(&-Scalar::one())
    }
}

impl<V: Ord + Clone + fmt::Debug> Ring for Polynomial<V> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_scalar(c: Scalar) -> Self {
        Polynomial::constant(c)
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for Polynomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})·{m}")?;
            }
        }
        Ok(())
    }
}

impl<V: Ord + Clone + fmt::Debug> fmt::Debug for Polynomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Renders a polynomial as a list of `(coefficient, variables)` string pairs.
pub fn render_terms<V: Ord + Clone + fmt::Display>(p: &Polynomial<V>) -> Vec<(String, Vec<String>)> {
    p.terms()
        .map(|(m, c)| {
            (alloc::format!("{c}"), m.vars().iter().map(|v| alloc::format!("{v}")).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    type P = Polynomial<&'static str>;

    #[test]
    fn monomial_product_and_binomial() {
        let a = P::var("a");
        let b = P::var("b");
        let ab = a.mul_ref(&b);
        assert_eq!(ab.len(), 1);
        assert_eq!(ab.coefficient(&Monomial::from_vars(alloc::vec!["b", "a"])), Scalar::one());
        let sq = (&a + &b).pow(2);
        assert_eq!(sq.coefficient(&Monomial::from_vars(alloc::vec!["a", "b"])), Scalar::from(2));
        assert_eq!(sq.coefficient(&Monomial::from_vars(alloc::vec!["a", "a"])), Scalar::one());
        assert_eq!(sq.len(), 3);
    }

    #[test]
    fn additive_inverse_is_zero() {
        let p = &P::var("a").pow(3) + &P::constant(Scalar::ratio(2, 7));
        assert!((&p + &(-&p)).is_zero());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let p = P::var("a").mul_ref(&P::var("b"));
        let env: BTreeMap<_, _> = [("a", Scalar::from(2)), ("b", Scalar::from(3))].into();
        assert_eq!(substitute(&p, &env).unwrap(), Scalar::from(6));
        assert_eq!(substitute(&P::zero(), &BTreeMap::new()).unwrap(), Scalar::zero());
        let q = &P::var("a").pow(2) - &P::var("a");
        let env1: BTreeMap<_, _> = [("a", Scalar::one())].into();
        assert_eq!(substitute(&q, &env1).unwrap(), Scalar::zero());
        match substitute(&p, &env1) {
            Err(Error::MissingSymbol(name)) => assert_eq!(name, "b"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn display() {
        let p = &P::var("a").scale(&Scalar::from(-2)) + &P::one();
        assert_eq!(p.to_string(), "(1+0i) + (-2+0i)·a");
    }
}
