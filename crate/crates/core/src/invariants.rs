//! Kernel invariants and structural predicates derived from a group and
//! its character table.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::chartab::{dixon_character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{
    center, derived_subgroup, exact_log, exponent_of, intersect, is_elementary_abelian, nilpotency_class,
    normal_subgroups, Group, Subgroup,
};

/// Kernel data over `Irr(G)`.
#[derive(Clone, Debug)]
pub struct KernelProfile {
    /// Distinct kernels of non-linear characters, sorted.
    pub kern: Vec<Subgroup>,
    /// How many non-linear characters share each kernel in `kern`.
    pub kern_counts: Vec<usize>,
    /// `{|ker χ| : χ ∈ Irr(G)}`.
    pub sk: BTreeSet<usize>,
    /// `{|ker χ| : χ non-linear}`.
    pub skn: BTreeSet<usize>,
    /// Degrees with the number of characters of each.
    pub cd: BTreeMap<u64, usize>,
    /// Largest `m` with `p^m ∈ skn`; `None` when `skn` is empty or the
    /// order is not a prime power.
    pub m_max: Option<u32>,
}

impl KernelProfile {
    /// The single exponent `m` when `skn = {p^m}`.
    pub fn uniform_m(&self, p: u64) -> Option<u32> {
        match self.skn.iter().collect::<Vec<_>>().as_slice() {
            [k] => exact_log(**k as u64, p),
            _ => None,
        }
    }

    pub fn degrees(&self) -> BTreeSet<u64> {
        self.cd.keys().copied().collect()
    }
}

pub fn kernel_profile(g: &Group, table: &CharacterTable) -> KernelProfile {
    let mut sk = BTreeSet::new();
    let mut skn = BTreeSet::new();
    let mut cd = BTreeMap::new();
    let mut kern: BTreeMap<Subgroup, usize> = BTreeMap::new();
    for c in table.characters() {
        let k = c.kernel();
        sk.insert(k.order());
        *cd.entry(c.degree()).or_insert(0) += 1;
        if !c.is_linear() {
            skn.insert(k.order());
            *kern.entry(k.clone()).or_insert(0) += 1;
        }
    }
    let m_max = g
        .prime_power()
        .and_then(|(p, _)| skn.iter().filter_map(|&k| exact_log(k as u64, p)).max());
    let (kern, kern_counts) = kern.into_iter().unzip();
    KernelProfile { kern, kern_counts, sk, skn, cd, m_max }
}

/// Every non-linear character vanishes off its own center.
pub fn is_gvz(g: &Group, table: &CharacterTable) -> Result<bool> {
    require_nonabelian(g)?;
    Ok(table.characters().iter().enumerate().filter(|(_, c)| !c.is_linear()).all(|(a, c)| {
        table
            .classes()
            .classes
            .iter()
            .enumerate()
            .all(|(i, cl)| c.center().contains(cl.rep) || table.vanishes_at(a, i))
    }))
}

/// `(G, N)` is a generalized Camina pair: non-linear characters vanish
/// outside `N`.
pub fn gcp_by_vanishing(table: &CharacterTable, n: &Subgroup) -> bool {
    table.characters().iter().enumerate().filter(|(_, c)| !c.is_linear()).all(|(a, _)| {
        table
            .classes()
            .classes
            .iter()
            .enumerate()
            .all(|(i, cl)| n.contains(cl.rep) || table.vanishes_at(a, i))
    })
}

/// `(G, N)` is a generalized Camina pair: the class of every `g ∉ N` is
/// the coset `gG'`.
pub fn gcp_by_cosets(g: &Group, table: &CharacterTable, n: &Subgroup, derived: &Subgroup) -> bool {
    table.classes().classes.iter().filter(|cl| !n.contains(cl.rep)).all(|cl| {
        cl.size() == derived.order() && cl.members.iter().all(|&x| derived.contains(g.mul(g.inv(cl.rep), x)))
    })
}

/// Both generalized Camina pair tests; they must agree.
pub fn is_gcp(g: &Group, n: &Subgroup, table: &CharacterTable) -> Result<bool> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let a = gcp_by_vanishing(table, n);
    let b = gcp_by_cosets(g, table, n, &derived_subgroup(g));
    if a != b {
        return Err(Error::MethodDisagreement(format!(
            "character vanishing says {a}, class cosets say {b} for a normal subgroup of order {}",
            n.order()
        )));
    }
    Ok(a)
}

/// `(strong, weak)`: every normal `N` has `G' ≤ N`, or else `N ≤ Z(G)`
/// (strong) or `|NZ(G)/Z(G)| ≤ p` (weak).
pub fn check_strong_weak(g: &Group, normals: &[Subgroup]) -> (bool, bool) {
    let z = center(g);
    let d = derived_subgroup(g);
    let p = g.prime_power().map_or(1, |(p, _)| p as usize);
    let mut strong = true;
    let mut weak = true;
    for n in normals {
        if d.is_subgroup_of(n) {
            continue;
        }
        strong &= n.is_subgroup_of(&z);
        weak &= n.product_order(&z) / z.order() <= p;
    }
    (strong, weak)
}

/// Distinct non-linear kernels are pairwise incomparable.
pub fn is_j_group(g: &Group, profile: &KernelProfile) -> Result<bool> {
    require_nonabelian(g)?;
    let k = &profile.kern;
    Ok((0..k.len()).all(|i| (0..k.len()).all(|j| i == j || !k[i].is_subgroup_of(&k[j]))))
}

/// `(|Kern(G)|, #{N normal : G' ⊄ N})`.
pub fn k_mn(g: &Group, profile: &KernelProfile, normals: &[Subgroup]) -> Result<(usize, usize)> {
    require_nonabelian(g)?;
    let d = derived_subgroup(g);
    Ok((profile.kern.len(), normals.iter().filter(|n| !d.is_subgroup_of(n)).count()))
}

/// Outcome of looking for a normal subgroup of a given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniqueNormal {
    Unique(Subgroup),
    /// Number of normal subgroups of that order (zero or several).
    NotUnique(usize),
}

impl UniqueNormal {
    pub fn unique(&self) -> Option<&Subgroup> {
        match self {
            UniqueNormal::Unique(s) => Some(s),
            UniqueNormal::NotUnique(_) => None,
        }
    }
}

pub fn unique_normal_of_order(normals: &[Subgroup], size: usize) -> UniqueNormal {
    let mut it = normals.iter().filter(|n| n.order() == size);
    match (it.next(), it.next()) {
        (Some(n), None) => UniqueNormal::Unique(n.clone()),
        (first, second) => UniqueNormal::NotUnique(first.is_some() as usize + second.is_some() as usize + it.count()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateProfile {
    /// `None` for abelian groups.
    pub is_gvz: Option<bool>,
    pub gcp_with_center: bool,
    pub strong_condition: bool,
    pub weak_condition: bool,
    pub j_group: Option<bool>,
    pub k_m: Option<usize>,
    pub k_n: Option<usize>,
    pub elementary_abelian_center: bool,
    /// Number of normal subgroups of each order.
    pub unique_normal_orders: BTreeMap<usize, usize>,
}

/// Everything the checks and reports need about one group.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub group: Group,
    pub table: CharacterTable,
    /// `(p, n)` with `|G| = p^n`, when the order is a prime power.
    pub prime_power: Option<(u64, u32)>,
    pub exponent: u64,
    pub class: Option<usize>,
    pub center: Subgroup,
    pub derived: Subgroup,
    pub normals: Vec<Subgroup>,
    pub kernels: KernelProfile,
    pub predicates: PredicateProfile,
}

impl Analysis {
    pub fn is_abelian(&self) -> bool {
        self.derived.is_trivial()
    }

    pub fn p(&self) -> Option<u64> {
        self.prime_power.map(|(p, _)| p)
    }
}

pub fn analyze(group: Group) -> Result<Analysis> {
    let table = dixon_character_table(&group)?;
    let normals = normal_subgroups(&group, &table);
    let kernels = kernel_profile(&group, &table);
    let z = center(&group);
    let d = derived_subgroup(&group);
    let (strong, weak) = check_strong_weak(&group, &normals);
    let nonabelian = !d.is_trivial();
    let (k_m, k_n) = match k_mn(&group, &kernels, &normals) {
        Ok((m, n)) => (Some(m), Some(n)),
        Err(_) => (None, None),
    };
    let mut unique_normal_orders = BTreeMap::new();
    for n in &normals {
        *unique_normal_orders.entry(n.order()).or_insert(0) += 1;
    }
    let prime_power = group.prime_power();
    let predicates = PredicateProfile {
        is_gvz: nonabelian.then(|| is_gvz(&group, &table)).transpose()?,
        gcp_with_center: is_gcp(&group, &z, &table)?,
        strong_condition: strong,
        weak_condition: weak,
        j_group: nonabelian.then(|| is_j_group(&group, &kernels)).transpose()?,
        k_m,
        k_n,
        elementary_abelian_center: prime_power.is_some_and(|(p, _)| is_elementary_abelian(&group, &z, p)),
        unique_normal_orders,
    };
    Ok(Analysis {
        exponent: exponent_of(&group),
        class: nilpotency_class(&group).ok(),
        prime_power,
        center: z,
        derived: d,
        normals,
        kernels,
        predicates,
        table,
        group,
    })
}

fn require_nonabelian(g: &Group) -> Result<()> {
    if g.is_abelian() {
        Err(Error::NotApplicable("group is abelian".into()))
    } else {
        Ok(())
    }
}

/// Intersection of all non-linear kernels, `None` for abelian groups.
pub fn nonlinear_kernel_intersection(profile: &KernelProfile) -> Option<Subgroup> {
    let mut it = profile.kern.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, k| intersect(&acc, k).expect("kernels share the parent group")))
}
