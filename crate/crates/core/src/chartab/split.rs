//! Simultaneous eigenspace splitting of the class matrices over `F_q`.
//!
//! The class matrices commute and are diagonalizable over `F_q` (the prime
//! is chosen `≡ 1 mod exp G` and coprime to `|G|`), so their common
//! eigenspaces are spanned by the central characters. Starting from the
//! whole space, every current subspace is split by each class matrix in
//! index order until all pieces are one-dimensional.
//!
//! A subspace `W` is split by `M` without forming the restriction of `M`
//! to `W`: for a vector `v ∈ W`, the Krylov sequence `v, Mv, M²v, …` gives
//! the minimal polynomial `μ_v`, which splits into distinct linear factors.
//! For each root `λ`, `(μ_v / (x − λ))(M) v` is the component of `v` in the
//! `λ`-eigenspace (up to a non-zero scalar). Projecting successive basis
//! vectors of `W` fills every eigenspace.

use std::collections::BTreeMap;

use super::coefficients::ClassCoefficients;
use crate::cyclotomic::ModField;
use crate::error::{Error, Result};

/// Incrementally built row-echelon basis.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    #[cfg(test)]
    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current rows.
    fn insert(&mut self, mut v: Vec<u64>, f: &ModField) -> bool {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                axpy(&mut v, f.q - c, row, f);
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = f.inv(v[piv]);
        scale(&mut v, s, f);
        self.rows.push((piv, v));
        true
    }

    fn into_basis(self) -> Vec<Vec<u64>> {
        self.rows.into_iter().map(|(_, v)| v).collect()
    }
}

/// `y += a·x`
fn axpy(y: &mut [u64], a: u64, x: &[u64], f: &ModField) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = f.add(*yi, f.mul(a, xi));
        }
    }
}

fn scale(v: &mut [u64], a: u64, f: &ModField) {
    for x in v.iter_mut() {
        *x = f.mul(*x, a);
    }
}

/// Minimal polynomial of `v` under `M_i` (monic, constant term first) and
/// the Krylov vectors `v, Mv, …, M^{t−1} v`.
fn krylov_minpoly(
    coeffs: &ClassCoefficients,
    i: usize,
    v: &[u64],
    f: &ModField,
) -> (Vec<u64>, Vec<Vec<u64>>) {
    let mut krylov: Vec<Vec<u64>> = Vec::new();
    // reduced rows with pivot and the combination of Krylov vectors they equal
    let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut next = v.to_vec();
    loop {
        let t = krylov.len();
        krylov.push(next.clone());
        let mut combo = vec![0u64; t + 1];
        combo[t] = 1;
        let mut r = next;
        for (piv, row, c) in &rows {
            let a = r[*piv];
            if a != 0 {
                let neg = f.q - a;
                axpy(&mut r, neg, row, f);
                axpy(&mut combo[..c.len()], neg, c, f);
            }
        }
        match r.iter().position(|&x| x != 0) {
            None => {
                krylov.pop();
                return (combo, krylov);
            }
            Some(piv) => {
                let s = f.inv(r[piv]);
                scale(&mut r, s, f);
                scale(&mut combo, s, f);
                rows.push((piv, r, combo));
            }
        }
        next = coeffs.apply(i, &krylov[t], f);
    }
}

fn eval_poly(p: &[u64], x: u64, f: &ModField) -> u64 {
    p.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `p / (x − λ)` for a root `λ`, constant term first.
fn deflate(p: &[u64], lambda: u64, f: &ModField) -> Vec<u64> {
    let t = p.len() - 1;
    let mut out = vec![0u64; t];
    let mut carry = 0;
    for k in (1..=t).rev() {
        carry = f.add(p[k], f.mul(carry, lambda));
        out[k - 1] = carry;
    }
    out
}

/// Splits `space` into eigenspaces of class matrix `i`, ordered by eigenvalue.
fn split_space(
    coeffs: &ClassCoefficients,
    i: usize,
    space: &[Vec<u64>],
    f: &ModField,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = space.len();
    let mut pieces: BTreeMap<u64, Echelon> = BTreeMap::new();
    let mut total = 0;
    for v in space {
        if total == d {
            break;
        }
        let (mu, krylov) = krylov_minpoly(coeffs, i, v, f);
        let roots: Vec<u64> = (0..f.q).filter(|&x| eval_poly(&mu, x, f) == 0).collect();
        if roots.len() != mu.len() - 1 {
            return Err(Error::SplitIncomplete {
                q: f.q,
                detail: format!(
                    "class matrix {i}: minimal polynomial of degree {} has {} roots in F_q",
                    mu.len() - 1,
                    roots.len()
                ),
            });
        }
        for &lambda in &roots {
            let p = deflate(&mu, lambda, f);
            let mut u = vec![0u64; v.len()];
            for (c, kv) in p.iter().zip(&krylov) {
                if *c != 0 {
                    axpy(&mut u, *c, kv, f);
                }
            }
            if pieces.entry(lambda).or_default().insert(u, f) {
                total += 1;
            }
        }
    }
    if total != d {
        return Err(Error::SplitIncomplete {
            q: f.q,
            detail: format!("class matrix {i}: eigenspaces cover {total} of {d} dimensions"),
        });
    }
    Ok(pieces.into_values().map(Echelon::into_basis).collect())
}

/// Common eigenvectors of all class matrices, each scaled so the identity
/// class coordinate is 1.
pub(crate) fn central_characters(coeffs: &ClassCoefficients, f: &ModField) -> Result<Vec<Vec<u64>>> {
    let n = coeffs.n_classes();
    let identity: Vec<Vec<u64>> = (0..n)
        .map(|k| {
            let mut v = vec![0; n];
            v[k] = 1;
            v
        })
        .collect();
    let mut spaces = vec![identity];
    for i in 1..n {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split_space(coeffs, i, &s, f)?);
            }
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() > 1) {
        return Err(Error::SplitIncomplete {
            q: f.q,
            detail: format!("a common eigenspace of dimension {} survived every class matrix", s.len()),
        });
    }
    spaces
        .into_iter()
        .map(|mut s| {
            let mut w = s.pop().unwrap();
            if w[0] == 0 {
                return Err(Error::SplitIncomplete {
                    q: f.q,
                    detail: "eigenvector vanishes at the identity class".into(),
                });
            }
            let s = f.inv(w[0]);
            scale(&mut w, s, f);
            Ok(w)
        })
        .collect()
}
