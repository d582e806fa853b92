use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::subgroup::closure;
use super::{ConjClassSet, Group, Subgroup};
use crate::chartab::CharacterTable;
use crate::error::Result;

/// All normal subgroups of `g`, as intersections of character kernels.
///
/// Sorted by order, then by member list.
pub fn normal_subgroups(g: &Group, table: &CharacterTable) -> Vec<Subgroup> {
    normal_subgroups_from_kernels(g, table.characters().iter().map(|c| c.kernel().clone()))
        .expect("kernels belong to the table's group")
}

/// Closure of `kernels ∪ {G}` under pairwise intersection.
pub fn normal_subgroups_from_kernels(
    g: &Group,
    kernels: impl IntoIterator<Item = Subgroup>,
) -> Result<Vec<Subgroup>> {
    let mut found: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    for k in std::iter::once(Subgroup::whole(g)).chain(kernels) {
        if k.parent_id() != g.id() {
            return Err(crate::Error::ParentMismatch);
        }
        if seen.insert(k.clone()) {
            found.push(k);
        }
    }
    // every new subgroup is intersected with everything before it
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let meet = super::intersect(&found[i], &found[j])?;
            if seen.insert(meet.clone()) {
                found.push(meet);
            }
        }
        i += 1;
    }
    found.sort();
    Ok(found)
}

/// Normal subgroups found without characters: every subgroup that is a
/// union of conjugacy classes, built up by adjoining one class at a time
/// to already known normal subgroups.
pub fn normal_subgroups_oracle(g: &Group, classes: &ConjClassSet) -> Vec<Subgroup> {
    let mut found: Vec<(FixedBitSet, Vec<u32>)> = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut trivial = FixedBitSet::with_capacity(g.order());
    trivial.insert(0);
    seen.insert(trivial.clone());
    found.push((trivial, Vec::new()));
    let mut i = 0;
    while i < found.len() {
        for class in classes.classes.iter().skip(1) {
            if found[i].0.contains(class.rep as usize) {
                continue;
            }
            let mut gens = found[i].1.clone();
            gens.extend_from_slice(&class.members);
            let set = closure(g, found[i].0.clone(), &gens, false);
            if seen.insert(set.clone()) {
                found.push((set, gens));
            }
        }
        i += 1;
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|(set, _)| Subgroup::from_set(g, set))
        .collect();
    debug_assert!(out.iter().all(Subgroup::is_normal));
    out.sort();
    out
}
