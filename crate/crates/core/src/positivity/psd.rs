//! Exact PSD decisions by pivoted LDL* over Gaussian rationals.

use alloc::vec;
use alloc::vec::Vec;

use crate::coefficients::{Rational, Scalar};
use crate::error::{Error, Result};

/// One elimination step: original index and its (positive) pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub index: usize,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdVerdict {
    pub psd: bool,
    /// For `psd = false`: a vector `v` with `v*Gv < 0`.
    pub witness: Option<Vec<Scalar>>,
    /// `v*Gv` for the witness.
    pub witness_value: Option<Rational>,
    pub pivots: Vec<Pivot>,
}

/// Exact `v*Gv`.
pub fn quadratic_form(g: &[Vec<Scalar>], v: &[Scalar]) -> Scalar {
    let mut total = Scalar::zero();
    for (i, row) in g.iter().enumerate() {
        if v[i].is_zero() {
            continue;
        }
        let mut gv = Scalar::zero();
        for (j, gij) in row.iter().enumerate() {
            if !v[j].is_zero() && !gij.is_zero() {
                gv += &(gij * &v[j]);
            }
        }
        total += &(&v[i].conj() * &gv);
    }
    total
}

pub fn check_hermitian(g: &[Vec<Scalar>]) -> Result<()> {
    let n = g.len();
    for (i, row) in g.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidArgument("Gram matrix is not square".into()));
        }
        for j in i..n {
            if g[i][j] != g[j][i].conj() {
                return Err(Error::NotHermitian { row: i, col: j });
            }
        }
    }
    Ok(())
}

struct Step {
    /// Position of the pivot inside the active list at elimination time.
    position: usize,
    pivot: Scalar,
    /// Row `M[p, rest]` in the order of the remaining active list.
    row: Vec<Scalar>,
}

/// Decides whether a Hermitian matrix is positive semidefinite.
///
/// Positive pivots are eliminated through Schur complements (largest diagonal first, ties by
/// index). A negative diagonal yields `e_i`; a zero diagonal with a nonzero entry `M_ij` yields
/// `t·e_i + e_j` with `t = −s·M_ij`, `s = (|M_jj|+1)/|M_ij|²`. Witnesses are lifted back through
/// the eliminations with `v_p = −(M_{p,rest} u)/M_pp`, which preserves the quadratic form.
pub fn psd_exact(g: &[Vec<Scalar>]) -> Result<PsdVerdict> {
    check_hermitian(g)?;
    let n = g.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut m: Vec<Vec<Scalar>> = g.to_vec();
    let mut steps: Vec<Step> = Vec::new();
    let mut pivots = Vec::new();

    let local_witness = loop {
        let k = active.len();
        if k == 0 {
            break None;
        }
        if let Some(i) = (0..k).find(|&i| m[i][i].re.is_negative()) {
            let mut u = vec![Scalar::zero(); k];
            u[i] = Scalar::one();
            break Some(u);
        }
        let best = (0..k)
            .filter(|&i| m[i][i].re.is_positive())
            .max_by(|&a, &b| m[a][a].re.cmp(&m[b][b].re).then(b.cmp(&a)));
        let Some(p) = best else {
            // all diagonals vanish
            let found = (0..k).find_map(|i| (0..k).find(|&j| !m[i][j].is_zero()).map(|j| (i, j)));
            match found {
                None => break None,
                Some((i, j)) => {
                    let mij = &m[i][j];
                    let s = (&m[j][j].re.abs() + &Rational::one()).checked_div(&mij.norm_sqr())?;
                    let mut u = vec![Scalar::zero(); k];
                    u[i] = -&mij.scale(&s);
                    u[j] = Scalar::one();
                    break Some(u);
                }
            }
        };
        let pivot = m[p][p].clone();
        pivots.push(Pivot { index: active[p], value: pivot.re.clone() });
        let inv = pivot.recip()?;
        let rest: Vec<usize> = (0..k).filter(|&i| i != p).collect();
        let row: Vec<Scalar> = rest.iter().map(|&j| m[p][j].clone()).collect();
        let mut next = Vec::with_capacity(rest.len());
        for &i in &rest {
            let factor = &m[i][p] * &inv;
            let new_row: Vec<Scalar> = rest
                .iter()
                .map(|&j| if factor.is_zero() { m[i][j].clone() } else { &m[i][j] - &(&factor * &m[p][j]) })
                .collect();
            next.push(new_row);
        }
        m = next;
        steps.push(Step { position: p, pivot, row });
        active.remove(p);
    };

    let Some(mut u) = local_witness else {
        return Ok(PsdVerdict { psd: true, witness: None, witness_value: None, pivots });
    };
    for step in steps.iter().rev() {
        let mut dot = Scalar::zero();
        for (a, b) in step.row.iter().zip(&u) {
            dot += &(a * b);
        }
        let vp = -&dot.checked_div(&step.pivot)?;
        u.insert(step.position, vp);
    }
    let value = quadratic_form(g, &u);
    debug_assert!(value.is_real() && value.re.is_negative());
    Ok(PsdVerdict { psd: false, witness: Some(u), witness_value: Some(value.re), pivots })
}
