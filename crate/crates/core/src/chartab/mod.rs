//! Character tables by the Dixon–Schneider method.
//!
//! Values are stored as eigenvalue multiplicities: at class `i`, a
//! character of degree `d` has `m[i][j]` eigenvalues equal to `ζ_e^j`, so
//! `χ(g_i) = Σ_j m[i][j] ζ_e^j` with `Σ_j m[i][j] = d`. Kernels and
//! character centers are read off these vectors directly.

mod coefficients;
mod dixon;
mod split;

use std::ops::Not;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{CycInt, CycRing, ModField};
use crate::group::{ConjClassSet, Group, Subgroup};

pub use coefficients::{class_coefficients, power_maps, ClassCoefficients, PowerMaps};
pub use dixon::{dixon_character_table, MAX_FIELD_RETRIES};

/// One irreducible character.
#[derive(Clone, Debug)]
pub struct Character {
    degree: u64,
    /// Per class, the non-zero `(j, m_j)` pairs in increasing `j`.
    mults: Vec<Vec<(u32, u32)>>,
    modq: Vec<u64>,
    kernel: Subgroup,
    center: Subgroup,
}

/// Per-character view used by the invariant checks.
pub type CharacterRow = Character;

impl Character {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }

    pub fn sparse_multiplicities(&self, class: usize) -> &[(u32, u32)] {
        &self.mults[class]
    }

    /// Dense multiplicity vector of length `e` at `class`.
    pub fn multiplicities(&self, class: usize, e: u32) -> Vec<u64> {
        let mut m = vec![0u64; e as usize];
        for &(j, c) in &self.mults[class] {
            m[j as usize] = c as u64;
        }
        m
    }

    /// Exact value at `class` in `Z[ζ_e]`.
    pub fn value(&self, class: usize, e: u32) -> CycInt {
        CycInt::from_terms(e, self.mults[class].iter().map(|&(j, c)| (j, c.into())))
    }

    /// Image of the value at `class` in the table's field.
    pub fn value_mod_q(&self, class: usize) -> u64 {
        self.modq[class]
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// `Z(χ)`.
    pub fn center(&self) -> &Subgroup {
        &self.center
    }

    /// Whether `χ(g) = χ(1)` on the class, i.e. all eigenvalues are 1.
    pub fn is_trivial_at(&self, class: usize) -> bool {
        matches!(self.mults[class].as_slice(), [(0, c)] if *c as u64 == self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 1 && self.mults.iter().all(|m| m.as_slice() == [(0, 1)])
    }
}

/// `{g : χ(g) = χ(1)}`.
pub fn kernel_of(row: &CharacterRow) -> Subgroup {
    row.kernel.clone()
}

/// `Z(χ) = {g : |χ(g)| = χ(1)}`.
pub fn center_of_char(row: &CharacterRow) -> Subgroup {
    row.center.clone()
}

/// Whether `χ` is zero on class `class`, tested on the reduced exact value.
pub fn vanishes_at(row: &CharacterRow, class: usize, e: u32) -> bool {
    row.value(class, e).is_zero()
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group_id: u64,
    order: usize,
    e: u32,
    field: ModField,
    classes: ConjClassSet,
    sizes: Vec<usize>,
    inverse: Vec<usize>,
    characters: Vec<Character>,
}

impl CharacterTable {
    fn assemble(g: &Group, classes: ConjClassSet, e: u32, field: ModField, characters: Vec<Character>) -> Self {
        let sizes = classes.sizes();
        let inverse = (0..classes.len()).map(|i| classes.inverse_class(g, i)).collect();
        CharacterTable { group_id: g.id(), order: g.order(), e, field, classes, sizes, inverse, characters }
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    /// Order of the roots of unity the values live in (the group exponent).
    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn field(&self) -> &ModField {
        &self.field
    }

    pub fn classes(&self) -> &ConjClassSet {
        &self.classes
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn value(&self, chi: usize, class: usize) -> CycInt {
        self.characters[chi].value(class, self.e)
    }

    pub fn vanishes_at(&self, chi: usize, class: usize) -> bool {
        vanishes_at(&self.characters[chi], class, self.e)
    }

    /// `Σ χ(1)²`.
    pub fn degree_square_sum(&self) -> u64 {
        self.characters.iter().map(|c| c.degree * c.degree).sum()
    }

    /// Exact `Σ_i h_i χ_a(g_i) conj(χ_b(g_i))`, returned as the coefficient
    /// vector of the reduced element of `Z[ζ_e]`.
    pub fn row_inner_product(&self, a: usize, b: usize) -> Vec<i128> {
        let e = self.e as usize;
        let mut acc = vec![0i128; e];
        let (ca, cb) = (&self.characters[a], &self.characters[b]);
        for (i, &h) in self.sizes.iter().enumerate() {
            for &(ja, ma) in &ca.mults[i] {
                for &(jb, mb) in &cb.mults[i] {
                    let slot = (ja as usize + e - jb as usize) % e;
                    acc[slot] += h as i128 * ma as i128 * mb as i128;
                }
            }
        }
        reduce(self.e, acc)
    }

    /// Exact `Σ_χ χ(g_i) conj(χ(g_l))`.
    pub fn column_inner_product(&self, i: usize, l: usize) -> Vec<i128> {
        let e = self.e as usize;
        let mut acc = vec![0i128; e];
        for c in &self.characters {
            for &(ja, ma) in &c.mults[i] {
                for &(jb, mb) in &c.mults[l] {
                    acc[(ja as usize + e - jb as usize) % e] += ma as i128 * mb as i128;
                }
            }
        }
        reduce(self.e, acc)
    }

    /// First pair `(a, b)` violating `⟨χ_a, χ_b⟩ = δ_ab`, if any.
    pub fn row_orthogonality_violation(&self) -> Option<(usize, usize)> {
        let n = self.order as i128;
        let k = self.characters.len();
        (0..k).into_par_iter().find_map_first(|a| {
            (a..k).find_map(|b| {
                let v = self.row_inner_product(a, b);
                is_integer(&v, if a == b { n } else { 0 }).not().then_some((a, b))
            })
        })
    }

    /// First pair of classes violating `Σ_χ χ(g_i) conj χ(g_l) = δ_il |C_G(g_i)|`.
    pub fn column_orthogonality_violation(&self) -> Option<(usize, usize)> {
        let k = self.classes.len();
        (0..k).into_par_iter().find_map_first(|i| {
            let c = (self.order / self.sizes[i]) as i128;
            (i..k).find_map(|l| {
                let v = self.column_inner_product(i, l);
                is_integer(&v, if i == l { c } else { 0 }).not().then_some((i, l))
            })
        })
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            order: self.order,
            exponent: self.e,
            field: self.field,
            class_sizes: self.sizes.clone(),
            class_reps: self.classes.classes.iter().map(|c| c.rep).collect(),
            characters: self
                .characters
                .iter()
                .map(|c| CharacterJson {
                    degree: c.degree,
                    multiplicities: c.mults.clone(),
                    values: (0..self.sizes.len()).map(|i| c.value(i, self.e)).collect(),
                })
                .collect(),
        }
    }
}

fn reduce(e: u32, acc: Vec<i128>) -> Vec<i128> {
    CycRing::get(e).reduce_i128(acc).expect("inner products fit in i128")
}

fn is_integer(v: &[i128], n: i128) -> bool {
    v[0] == n && v[1..].iter().all(|&c| c == 0)
}

/// Serialized table. Multiplicities are sparse `[j, m_j]` pairs per class.
#[derive(Serialize)]
pub struct TableJson {
    pub order: usize,
    pub exponent: u32,
    pub field: ModField,
    pub class_sizes: Vec<usize>,
    pub class_reps: Vec<u32>,
    pub characters: Vec<CharacterJson>,
}

#[derive(Serialize)]
pub struct CharacterJson {
    pub degree: u64,
    pub multiplicities: Vec<Vec<(u32, u32)>>,
    pub values: Vec<CycInt>,
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::group::{build_group, derived_subgroup, GroupSpec};

    fn table(spec: GroupSpec) -> (Group, CharacterTable) {
        let g = build_group(&spec).unwrap();
        let t = dixon_character_table(&g).unwrap();
        (g, t)
    }

    fn degree_counts(t: &CharacterTable) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for c in t.characters() {
            *m.entry(c.degree()).or_default() += 1;
        }
        m
    }

    fn check_exact(g: &Group, t: &CharacterTable) {
        assert_eq!(t.len(), t.classes().len());
        assert_eq!(t.degree_square_sum(), g.order() as u64);
        assert_eq!(t.row_orthogonality_violation(), None);
        assert_eq!(t.column_orthogonality_violation(), None);
        let linear = t.characters().iter().filter(|c| c.is_linear()).count();
        assert_eq!(linear, g.order() / derived_subgroup(g).order());
        for c in t.characters() {
            for i in 0..t.classes().len() {
                assert_eq!(c.value(i, t.e()).image_mod(t.field()), c.value_mod_q(i));
            }
        }
    }

    #[test]
    fn cyclic_three_is_the_dft() {
        let (g, t) = table(GroupSpec::cyclic(3));
        check_exact(&g, &t);
        assert_eq!(t.len(), 3);
        let mut rows: Vec<Vec<u32>> = t
            .characters()
            .iter()
            .map(|c| (0..3).map(|i| c.sparse_multiplicities(i)[0].0).collect())
            .collect();
        rows.sort();
        // χ_s(x^k) = ζ^{sk}
        assert_eq!(rows, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn heisenberg_degrees_and_vanishing() {
        let (g, t) = table(GroupSpec::unitriangular(3, 3));
        check_exact(&g, &t);
        assert_eq!(degree_counts(&t), BTreeMap::from([(1, 9), (3, 2)]));
        let z = crate::group::center(&g);
        for (a, c) in t.characters().iter().enumerate() {
            if c.is_linear() {
                assert!(c.center().is_whole(&g));
                assert!((0..t.classes().len()).all(|i| !t.vanishes_at(a, i)));
            } else {
                assert!(c.kernel().is_trivial());
                assert_eq!(c.center(), &z);
                for (i, cl) in t.classes().classes.iter().enumerate() {
                    assert_eq!(t.vanishes_at(a, i), !z.contains(cl.rep));
                }
            }
        }
    }

    #[test]
    fn product_table_sizes() {
        let (g, t) = table(GroupSpec::product(vec![GroupSpec::unitriangular(3, 3), GroupSpec::cyclic(3)]));
        check_exact(&g, &t);
        assert_eq!(t.len(), 33);
        assert_eq!(degree_counts(&t), BTreeMap::from([(1, 27), (3, 6)]));
    }

    #[test]
    fn kernels_match_direct_evaluation() {
        for spec in [GroupSpec::semidirect(9, 3, 4), GroupSpec::cyclic(9), GroupSpec::unitriangular(4, 3)] {
            let (g, t) = table(spec);
            check_exact(&g, &t);
            let e = t.e();
            for c in t.characters() {
                let d = CycInt::from_int(e, c.degree() as i64);
                let d2 = CycInt::from_int(e, (c.degree() * c.degree()) as i64);
                for (i, cl) in t.classes().classes.iter().enumerate() {
                    let v = c.value(i, e);
                    assert_eq!(c.kernel().contains(cl.rep), v == d);
                    assert_eq!(c.center().contains(cl.rep), &v * &v.conj() == d2);
                }
                assert!(c.kernel().is_subgroup_of(c.center()));
            }
        }
    }

    #[test]
    fn cyclic_nine_kernel_orders() {
        let (_, t) = table(GroupSpec::cyclic(9));
        let mut orders: Vec<usize> = t.characters().iter().map(|c| c.kernel().order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 1, 1, 1, 1, 1, 3, 3, 9]);
    }

    #[test]
    fn p_five_and_two_tables() {
        for spec in [
            GroupSpec::unitriangular(3, 5),
            GroupSpec::semidirect(25, 5, 6),
            GroupSpec::unitriangular(3, 2),
            crate::catalog::preset("quaternion-8").unwrap(),
        ] {
            let (g, t) = table(spec);
            check_exact(&g, &t);
        }
    }
}
