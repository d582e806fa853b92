use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{is_prime, Group, Realization};
use crate::catalog;
use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: usize = 20_000;

/// A concrete description of a finite group.
///
/// Serialized as a JSON object tagged by `kind`; unknown fields are
/// rejected. Matrices are row-major `dim × dim` arrays of residues mod
/// `modulus`; permutations are 0-based image arrays and compose left to
/// right (`x * y` applies `x` first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic {
        order: u64,
    },
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
    /// `C_pa ⋊ C_pb` with the generator of `C_pb` acting as `a ↦ a^r`.
    SemidirectCyclic {
        pa: u64,
        pb: u64,
        r: u64,
    },
    MatrixGroup {
        modulus: u64,
        dim: usize,
        generators: Vec<Vec<u64>>,
    },
    PermutationGroup {
        degree: usize,
        generators: Vec<Vec<u64>>,
    },
    /// Upper unitriangular `dim × dim` matrices over `F_p`.
    Unitriangular {
        dim: usize,
        p: u64,
    },
    Preset {
        name: String,
    },
}

impl GroupSpec {
    pub fn cyclic(order: u64) -> Self {
        GroupSpec::Cyclic { order }
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::DirectProduct { factors }
    }

    pub fn unitriangular(dim: usize, p: u64) -> Self {
        GroupSpec::Unitriangular { dim, p }
    }

    pub fn semidirect(pa: u64, pb: u64, r: u64) -> Self {
        GroupSpec::SemidirectCyclic { pa, pb, r }
    }

    pub fn preset(name: &str) -> Self {
        GroupSpec::Preset { name: name.to_string() }
    }

    /// The order implied by the parameters, when it is known without
    /// enumerating.
    pub fn projected_order(&self) -> Option<u128> {
        match self {
            GroupSpec::Cyclic { order } => Some(*order as u128),
            GroupSpec::SemidirectCyclic { pa, pb, .. } => Some(*pa as u128 * *pb as u128),
            GroupSpec::Unitriangular { dim, p } => {
                let e = (dim * dim.saturating_sub(1) / 2) as u32;
                (*p as u128).checked_pow(e)
            }
            GroupSpec::DirectProduct { factors } => factors
                .iter()
                .try_fold(1u128, |acc, f| acc.checked_mul(f.projected_order()?)),
            GroupSpec::Preset { name } => catalog::preset(name).ok()?.projected_order(),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::SpecInvalid(msg));
        match self {
            GroupSpec::Cyclic { order } if *order == 0 => bad("cyclic order must be positive".into()),
            GroupSpec::DirectProduct { factors } if factors.is_empty() => {
                bad("direct product needs at least one factor".into())
            }
            GroupSpec::SemidirectCyclic { pa, pb, r } => {
                if *pa == 0 || *pb == 0 {
                    return bad("semidirect orders must be positive".into());
                }
                if r.gcd(pa) != 1 {
                    return bad(format!("gcd(r={r}, pa={pa}) != 1"));
                }
                if pow_mod(*r, *pb, *pa) != 1 % pa {
                    return bad(format!("r^pb = {r}^{pb} is not 1 mod {pa}"));
                }
                Ok(())
            }
            GroupSpec::MatrixGroup { modulus, dim, generators } => {
                if *modulus < 2 || *dim == 0 {
                    return bad("matrix group needs modulus >= 2 and dim >= 1".into());
                }
                for (i, g) in generators.iter().enumerate() {
                    if g.len() != dim * dim {
                        return bad(format!("generator {i} has {} entries, expected {}", g.len(), dim * dim));
                    }
                    if g.iter().any(|&x| x >= *modulus) {
                        return bad(format!("generator {i} has an entry >= modulus"));
                    }
                    let det = determinant(g, *dim);
                    if (det.rem_euclid(*modulus as i128) as u64).gcd(modulus) != 1 {
                        return bad(format!("generator {i} is not invertible mod {modulus}"));
                    }
                }
                Ok(())
            }
            GroupSpec::PermutationGroup { degree, generators } => {
                for (i, g) in generators.iter().enumerate() {
                    let mut seen = vec![false; *degree];
                    if g.len() != *degree {
                        return bad(format!("permutation {i} has length {}, expected {degree}", g.len()));
                    }
                    for &x in g {
                        if x as usize >= *degree || std::mem::replace(&mut seen[x as usize], true) {
                            return bad(format!("permutation {i} is not a bijection"));
                        }
                    }
                }
                Ok(())
            }
            GroupSpec::Unitriangular { dim, p } => {
                if *dim == 0 || !is_prime(*p) {
                    return bad(format!("unitriangular needs dim >= 1 and prime p (got dim={dim}, p={p})"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    build_group_with_cap(spec, DEFAULT_ELEMENT_CAP)
}

pub fn build_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<Group> {
    spec.validate()?;
    if let Some(n) = spec.projected_order() {
        if n > cap as u128 {
            return Err(Error::GroupTooLarge { cap });
        }
    }
    match spec {
        GroupSpec::Cyclic { order } => {
            let n = *order as u32;
            let gens = if n > 1 { vec![vec![1]] } else { vec![] };
            enumerate(vec![0], gens, |a, b| vec![(a[0] + b[0]) % n], cap, |_| Realization::Abstract)
        }
        GroupSpec::DirectProduct { factors } => {
            let groups = factors
                .iter()
                .map(|f| build_group_with_cap(f, cap))
                .collect::<Result<Vec<_>>>()?;
            let k = groups.len();
            let mut gens = Vec::new();
            for (i, g) in groups.iter().enumerate() {
                for &x in g.generators() {
                    let mut v = vec![0u32; k];
                    v[i] = x;
                    gens.push(v);
                }
            }
            enumerate(
                vec![0; k],
                gens,
                |a, b| groups.iter().enumerate().map(|(i, g)| g.mul(a[i], b[i])).collect(),
                cap,
                |_| Realization::Abstract,
            )
        }
        GroupSpec::SemidirectCyclic { pa, pb, r } => {
            let (pa, pb) = (*pa, *pb);
            let rpow: Vec<u64> = (0..pb).map(|b| pow_mod(*r, b, pa)).collect();
            let mut gens = Vec::new();
            if pa > 1 {
                gens.push(vec![1, 0]);
            }
            if pb > 1 {
                gens.push(vec![0, 1]);
            }
            enumerate(
                vec![0, 0],
                gens,
                |x, y| {
                    let a = (x[0] as u64 + rpow[x[1] as usize] * y[0] as u64) % pa;
                    let b = (x[1] as u64 + y[1] as u64) % pb;
                    vec![a as u32, b as u32]
                },
                cap,
                |_| Realization::Abstract,
            )
        }
        GroupSpec::MatrixGroup { modulus, dim, generators } => {
            let gens = generators.iter().map(|g| g.iter().map(|&x| x as u32).collect()).collect();
            matrix_group(*modulus, *dim, gens, cap)
        }
        GroupSpec::Unitriangular { dim, p } => {
            let n = *dim;
            let gens = (0..n.saturating_sub(1))
                .map(|i| {
                    let mut m = identity_matrix(n);
                    m[i * n + i + 1] = 1;
                    m
                })
                .collect();
            matrix_group(*p, n, gens, cap)
        }
        GroupSpec::PermutationGroup { degree, generators } => {
            let degree = *degree;
            let gens = generators.iter().map(|g| g.iter().map(|&x| x as u32).collect()).collect();
            enumerate(
                (0..degree as u32).collect(),
                gens,
                |x, y| x.iter().map(|&i| y[i as usize]).collect(),
                cap,
                |elements| Realization::Permutation { degree, elements },
            )
        }
        GroupSpec::Preset { name } => build_group_with_cap(&catalog::preset(name)?, cap),
    }
}

fn matrix_group(modulus: u64, dim: usize, gens: Vec<Vec<u32>>, cap: usize) -> Result<Group> {
    enumerate(
        identity_matrix(dim),
        gens,
        |a, b| {
            let mut c = vec![0u32; dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    let mut s = 0u64;
                    for k in 0..dim {
                        s += a[i * dim + k] as u64 * b[k * dim + j] as u64 % modulus;
                    }
                    c[i * dim + j] = (s % modulus) as u32;
                }
            }
            c
        },
        cap,
        |elements| Realization::Matrix { modulus, dim, elements },
    )
}

fn identity_matrix(n: usize) -> Vec<u32> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// Breadth-first closure of `gens`, then the full Cayley table.
///
/// Every non-identity element `y` is recorded as `parent(y) * gen` for an
/// earlier parent, so row `a` of the table is filled as
/// `a * y = (a * parent(y)) * gen` using only the generator columns.
fn enumerate<F, R>(
    identity: Vec<u32>,
    gens: Vec<Vec<u32>>,
    mul: F,
    cap: usize,
    realize: R,
) -> Result<Group>
where
    F: Fn(&[u32], &[u32]) -> Vec<u32>,
    R: FnOnce(Vec<Vec<u32>>) -> Realization,
{
    let ngen = gens.len();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(identity, 0)]);
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut right_gen: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let y = mul(&elements[head], g);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    let i = elements.len() as u32;
                    index.insert(y.clone(), i);
                    elements.push(y);
                    parent.push((head as u32, gi as u32));
                    i
                }
            };
            right_gen.push(idx);
        }
        head += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let row = &mut table[a * n..(a + 1) * n];
        row[0] = a as u32;
        for y in 1..n {
            let (px, gi) = parent[y];
            row[y] = right_gen[row[px as usize] as usize * ngen + gi as usize];
        }
    }
    let generators = (0..ngen).map(|gi| right_gen[gi]).collect();
    let realization = realize(elements);
    Group::from_parts(n, table, generators, realization)
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Integer determinant by fraction-free (Bareiss) elimination.
fn determinant(m: &[u64], n: usize) -> i128 {
    let mut a: Vec<i128> = m.iter().map(|&x| x as i128).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            for c in 0..n {
                a.swap(k * n + c, r * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
        }
        prev = a[k * n + k];
    }
    sign * a[(n - 1) * n + (n - 1)]
}
