use crate::cyclotomic::ModField;
use crate::group::{ConjClassSet, Group};

/// Class multiplication coefficients `a[i][j][k]`: the number of pairs
/// `(x, y) ∈ C_i × C_j` with `xy = z` for a fixed `z ∈ C_k`.
///
/// Stored sparsely: for each `i`, the non-zero `(j, k, a)` triples sorted
/// by `(j, k)`. The class matrix of `C_i` is `(M_i)_{j,k} = a[i][j][k]`,
/// so a central character `ω` with `ω(C_0) = 1` satisfies
/// `M_i ω = ω(C_i) ω`.
#[derive(Clone, Debug)]
pub struct ClassCoefficients {
    n_classes: usize,
    entries: Vec<Vec<(u32, u32, u32)>>,
}

impl ClassCoefficients {
    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        let row = &self.entries[i];
        row.binary_search_by(|&(jj, kk, _)| (jj as usize, kk as usize).cmp(&(j, k)))
            .map_or(0, |pos| row[pos].2)
    }

    /// Non-zero `(j, k, a[i][j][k])` for class `i`.
    pub fn nonzero(&self, i: usize) -> &[(u32, u32, u32)] {
        &self.entries[i]
    }

    /// `M_i w` over `F_q`.
    pub fn apply(&self, i: usize, w: &[u64], field: &ModField) -> Vec<u64> {
        let mut out = vec![0u64; self.n_classes];
        for &(j, k, a) in &self.entries[i] {
            let t = field.mul(a as u64 % field.q, w[k as usize]);
            out[j as usize] = field.add(out[j as usize], t);
        }
        out
    }
}

pub fn class_coefficients(g: &Group, classes: &ConjClassSet) -> ClassCoefficients {
    let n = classes.len();
    let mut entries: Vec<Vec<(u32, u32, u32)>> = vec![Vec::new(); n];
    let mut counts = vec![0u32; n];
    let mut touched = Vec::new();
    for (k, ck) in classes.classes.iter().enumerate() {
        let z = ck.rep;
        for (i, ci) in classes.classes.iter().enumerate() {
            for &x in &ci.members {
                let j = classes.class_of(g.mul(g.inv(x), z));
                if counts[j] == 0 {
                    touched.push(j);
                }
                counts[j] += 1;
            }
            for &j in &touched {
                entries[i].push((j as u32, k as u32, counts[j]));
                counts[j] = 0;
            }
            touched.clear();
        }
    }
    for row in &mut entries {
        row.sort_unstable();
    }
    ClassCoefficients { n_classes: n, entries }
}

/// `pm[i][t]` = class of `g_i^t` for `t in 0..e`.
#[derive(Clone, Debug)]
pub struct PowerMaps {
    e: usize,
    map: Vec<u32>,
}

impl PowerMaps {
    pub fn get(&self, class: usize, t: usize) -> usize {
        self.map[class * self.e + t % self.e] as usize
    }

    pub fn exponent(&self) -> usize {
        self.e
    }
}

pub fn power_maps(g: &Group, classes: &ConjClassSet, e: u64) -> PowerMaps {
    let e = e as usize;
    let mut map = Vec::with_capacity(classes.len() * e);
    for c in &classes.classes {
        let mut x = 0u32;
        for _ in 0..e {
            map.push(classes.class_of(x) as u32);
            x = g.mul(x, c.rep);
        }
    }
    PowerMaps { e, map }
}
