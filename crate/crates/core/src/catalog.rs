//! Named groups, the default verification corpus, and subgroup search.

use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{build_group, nilpotency_class, GroupSpec, Group, Realization};

/// Largest ambient group `search_subgroups` accepts.
pub const SEARCH_AMBIENT_CAP: usize = 2187;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GroupSpec,
    #[serde(default)]
    pub tags: BTreeSet<String>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, spec: GroupSpec, tags: &[&str]) -> Self {
        CorpusEntry { name: name.into(), spec, tags: tags.iter().map(|t| t.to_string()).collect() }
    }
}

/// Parses a manifest: a JSON array of corpus entries with unique names.
pub fn parse_manifest(json: &str) -> Result<Vec<CorpusEntry>> {
    let entries: Vec<CorpusEntry> =
        serde_json::from_str(json).map_err(|e| Error::SpecInvalid(format!("manifest: {e}")))?;
    let mut names = HashSet::new();
    for e in &entries {
        if !names.insert(e.name.as_str()) {
            return Err(Error::SpecInvalid(format!("manifest: duplicate entry name `{}`", e.name)));
        }
    }
    Ok(entries)
}

fn cyc(n: u64) -> GroupSpec {
    GroupSpec::cyclic(n)
}

fn prod(orders: &[u64]) -> GroupSpec {
    GroupSpec::product(orders.iter().map(|&n| cyc(n)).collect())
}

fn nonabelian_bases() -> Vec<(&'static str, u64, GroupSpec, &'static [&'static str])> {
    vec![
        ("heisenberg-3", 3, GroupSpec::unitriangular(3, 3), &["extraspecial", "class-2"]),
        ("extraspecial-27-exp9", 3, GroupSpec::semidirect(9, 3, 4), &["extraspecial", "class-2"]),
        ("ut4-3", 3, GroupSpec::unitriangular(4, 3), &["class-3"]),
        ("heisenberg-5", 5, GroupSpec::unitriangular(3, 5), &["extraspecial", "class-2"]),
        ("extraspecial-125-exp25", 5, GroupSpec::semidirect(25, 5, 6), &["extraspecial", "class-2"]),
    ]
}

/// UT(3, F_9) as 6×6 matrices over F_3, writing `a + bi ∈ F_3[i]/(i² + 1)`
/// as the block `[[a, -b], [b, a]]`.
fn heisenberg_f9() -> GroupSpec {
    let elementary = |row: usize, col: usize, alpha: [[u64; 2]; 2]| {
        let mut m = vec![0u64; 36];
        for k in 0..6 {
            m[k * 6 + k] = 1;
        }
        for (r, line) in alpha.iter().enumerate() {
            for (c, &v) in line.iter().enumerate() {
                m[(2 * row + r) * 6 + 2 * col + c] = v;
            }
        }
        m
    };
    let one = [[1, 0], [0, 1]];
    let i = [[0, 2], [1, 0]];
    GroupSpec::MatrixGroup {
        modulus: 3,
        dim: 6,
        generators: vec![elementary(0, 1, one), elementary(0, 1, i), elementary(1, 2, one), elementary(1, 2, i)],
    }
}

/// Every registered preset, in registry order.
pub fn presets() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        for k in 1..=4 {
            let n = p.pow(k);
            out.push(CorpusEntry::new(format!("cyclic-{n}"), cyc(n), &["abelian", "cyclic"]));
        }
        for k in 2..=4usize {
            out.push(CorpusEntry::new(
                format!("elem-{p}-{k}"),
                prod(&vec![p; k]),
                &["abelian", "elementary-abelian"],
            ));
        }
    }
    for orders in [
        &[9u64, 3][..],
        &[27, 3],
        &[9, 9],
        &[9, 3, 3],
        &[27, 9],
        &[25, 5],
        &[125, 5],
        &[25, 25],
        &[25, 5, 5],
    ] {
        let name = format!("abelian-{}", orders.iter().map(u64::to_string).collect::<Vec<_>>().join("x"));
        out.push(CorpusEntry::new(name, prod(orders), &["abelian"]));
    }
    for (name, p, spec, tags) in nonabelian_bases() {
        out.push(CorpusEntry::new(name, spec.clone(), tags));
        let with = |suffix: &str, extra: GroupSpec| {
            let mut factors = vec![spec.clone()];
            factors.push(extra);
            CorpusEntry::new(format!("{name}-x-{suffix}"), GroupSpec::product(factors), &["product"])
        };
        out.push(with(&format!("c{p}"), cyc(p)));
        out.push(with(&format!("e{}", p * p), prod(&[p, p])));
    }
    out.push(CorpusEntry::new("heisenberg-9", heisenberg_f9(), &["camina", "class-2"]));
    out.push(CorpusEntry::new(
        "heisenberg-3-squared",
        GroupSpec::product(vec![GroupSpec::unitriangular(3, 3), GroupSpec::unitriangular(3, 3)]),
        &["product", "class-2"],
    ));
    out.push(CorpusEntry::new("abelian-27x27", prod(&[27, 27]), &["abelian"]));
    // p = 2, exploratory

    out.push(CorpusEntry::new("cyclic-8", cyc(8), &["abelian", "cyclic", "p2"]));
    out.push(CorpusEntry::new("elem-2-3", prod(&[2, 2, 2]), &["abelian", "elementary-abelian", "p2"]));
    out.push(CorpusEntry::new("dihedral-8", GroupSpec::unitriangular(3, 2), &["extraspecial", "class-2", "p2"]));
    out.push(CorpusEntry::new(
        "quaternion-8",
        GroupSpec::MatrixGroup { modulus: 3, dim: 2, generators: vec![vec![0, 1, 2, 0], vec![1, 1, 1, 2]] },
        &["extraspecial", "class-2", "p2"],
    ));
    out.push(CorpusEntry::new(
        "heisenberg-2-x-c2",
        GroupSpec::product(vec![GroupSpec::unitriangular(3, 2), cyc(2)]),
        &["product", "class-2", "p2"],
    ));
    out
}

pub fn preset(name: &str) -> Result<GroupSpec> {
    presets()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.spec)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

pub fn preset_names() -> Vec<String> {
    presets().into_iter().map(|e| e.name).collect()
}

/// Subgroup searches inside UT(4,3) that feed the default corpus:
/// `(order, class, limit)`.
pub const DEFAULT_SEARCHES: [(usize, usize, usize); 3] = [(81, 3, 3), (81, 2, 3), (243, 2, 3)];

/// The default corpus: odd-p presets of order `p²` up to 729 (p = 3) or
/// 625 (p = 5), plus search results from UT(4,3). The p = 2 presets are
/// appended only on request.
pub fn default_corpus(include_p2: bool) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for e in presets() {
        let is_p2 = e.tags.contains("p2");
        if is_p2 {
            if include_p2 {
                out.push(e);
            }
            continue;
        }
        let n = match e.spec.projected_order() {
            Some(n) => n,
            None => build_group(&e.spec)?.order() as u128,
        };
        let (p, cap) = if n % 3 == 0 { (3, 729) } else { (5, 625) };
        if n >= p * p && n <= cap {
            out.push(e);
        }
    }
    let ambient = GroupSpec::preset("ut4-3");
    for (order, class, limit) in DEFAULT_SEARCHES {
        out.extend(search_subgroups_named(&ambient, "ut4-3", order, Some(class), limit)?);
    }
    Ok(out)
}

/// Subgroups of `ambient` of the given order, generated by two elements
/// (or three, when pairs give fewer than `limit`), deduplicated by element
/// set and filtered by nilpotency class.
pub fn search_subgroups(
    ambient: &GroupSpec,
    order: usize,
    class_filter: Option<usize>,
    limit: usize,
) -> Result<Vec<CorpusEntry>> {
    let label = match ambient {
        GroupSpec::Preset { name } => name.clone(),
        _ => "ambient".to_string(),
    };
    search_subgroups_named(ambient, &label, order, class_filter, limit)
}

fn search_subgroups_named(
    ambient: &GroupSpec,
    label: &str,
    order: usize,
    class_filter: Option<usize>,
    limit: usize,
) -> Result<Vec<CorpusEntry>> {
    if let Some(n) = ambient.projected_order() {
        if n > SEARCH_AMBIENT_CAP as u128 {
            return Err(Error::AmbientTooLarge { order: n as usize, cap: SEARCH_AMBIENT_CAP });
        }
    }
    let g = build_group(ambient)?;
    if g.order() > SEARCH_AMBIENT_CAP {
        return Err(Error::AmbientTooLarge { order: g.order(), cap: SEARCH_AMBIENT_CAP });
    }
    if limit == 0 || order == 0 || g.order() % order != 0 {
        return Ok(Vec::new());
    }

    let mut out = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut accept = |gens: Vec<u32>, set: FixedBitSet, out: &mut Vec<CorpusEntry>| -> Result<()> {
        if out.len() >= limit || !seen.insert(set) {
            return Ok(());
        }
        let spec = export_spec(&g, &gens);
        let sub = build_group(&spec)?;
        debug_assert_eq!(sub.order(), order);
        let class = nilpotency_class(&sub).ok();
        if class_filter.is_some_and(|c| class != Some(c)) {
            return Ok(());
        }
        let mut tags = vec!["search".to_string()];
        if let Some(c) = class {
            tags.push(format!("class-{c}"));
            if let Some((_, n)) = sub.prime_power() {
                if n >= 2 && c == n as usize - 1 {
                    tags.push("maximal-class".into());
                }
            }
        }
        let name = match class {
            Some(c) => format!("{label}-sub{order}-c{c}-{}", out.len()),
            None => format!("{label}-sub{order}-{}", out.len()),
        };
        out.push(CorpusEntry { name, spec, tags: tags.into_iter().collect() });
        Ok(())
    };

    let (found, partial) = pair_subgroups(&g, order);
    for (gens, set) in found {
        accept(gens, set, &mut out)?;
    }
    if out.len() < limit {
        for (gens, set) in extend_by_one(&g, order, &partial) {
            accept(gens, set, &mut out)?;
        }
    }
    Ok(out)
}

/// Membership set of `<gens>`, or `None` once it exceeds `bound` elements.
fn bounded_closure(g: &Group, gens: &[u32], bound: usize) -> Option<FixedBitSet> {
    let mut set = FixedBitSet::with_capacity(g.order());
    set.insert(0);
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !set.put(y as usize) {
                if queue.len() == bound {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(set)
}

type Found = Vec<(Vec<u32>, FixedBitSet)>;

/// Pair-generated subgroups of exactly `order` (first generating pair in
/// index order) and of smaller orders dividing it.
fn pair_subgroups(g: &Group, order: usize) -> (Found, Found) {
    let n = g.order() as u32;
    let per_first: Vec<(Found, Found)> = (1..n)
        .into_par_iter()
        .map(|a| {
            let mut exact: Found = Vec::new();
            let mut smaller: Found = Vec::new();
            let mut local: HashSet<FixedBitSet> = HashSet::new();
            for b in a + 1..n {
                // any subgroup already found that holds a and b contains <a,b>
                if exact.iter().any(|(_, s)| s.contains(b as usize)) {
                    continue;
                }
                let Some(set) = bounded_closure(g, &[a, b], order) else {
                    continue;
                };
                let size = set.count_ones(..);
                if order % size != 0 || !local.insert(set.clone()) {
                    continue;
                }
                if size == order {
                    exact.push((vec![a, b], set));
                } else {
                    smaller.push((vec![a, b], set));
                }
            }
            (exact, smaller)
        })
        .collect();
    let mut exact = Vec::new();
    let mut smaller = Vec::new();
    let mut seen_exact = HashSet::new();
    let mut seen_smaller = HashSet::new();
    for (e, s) in per_first {
        exact.extend(e.into_iter().filter(|(_, set)| seen_exact.insert(set.clone())));
        smaller.extend(s.into_iter().filter(|(_, set)| seen_smaller.insert(set.clone())));
    }
    (exact, smaller)
}

/// Subgroups of exactly `order` obtained by adjoining one element to a
/// smaller pair-generated subgroup.
fn extend_by_one(g: &Group, order: usize, partial: &Found) -> Found {
    let per_base: Vec<Found> = partial
        .par_iter()
        .map(|(gens, set)| {
            let mut found: Found = Vec::new();
            for c in 1..g.order() as u32 {
                if set.contains(c as usize) || found.iter().any(|(_, s)| s.contains(c as usize)) {
                    continue;
                }
                let mut with = gens.clone();
                with.push(c);
                if let Some(s) = bounded_closure(g, &with, order) {
                    if s.count_ones(..) == order {
                        found.push((with, s));
                    }
                }
            }
            found
        })
        .collect();
    let mut seen = HashSet::new();
    per_base.into_iter().flatten().filter(|(_, s)| seen.insert(s.clone())).collect()
}

/// A spec for `<gens>` that rebuilds the subgroup on its own: matrices or
/// permutations when the ambient group has them, otherwise the right
/// regular representation of the ambient group.
pub fn export_spec(g: &Group, gens: &[u32]) -> GroupSpec {
    match g.realization() {
        Realization::Matrix { modulus, dim, elements } => GroupSpec::MatrixGroup {
            modulus: *modulus,
            dim: *dim,
            generators: gens.iter().map(|&x| elements[x as usize].iter().map(|&v| v as u64).collect()).collect(),
        },
        Realization::Permutation { degree, elements } => GroupSpec::PermutationGroup {
            degree: *degree,
            generators: gens.iter().map(|&x| elements[x as usize].iter().map(|&v| v as u64).collect()).collect(),
        },
        Realization::Abstract => GroupSpec::PermutationGroup {
            degree: g.order(),
            generators: gens
                .iter()
                .map(|&s| g.elements().map(|x| g.mul(x, s) as u64).collect())
                .collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn presets_build_to_their_orders() {
        for e in presets() {
            let g = build_group(&e.spec).unwrap();
            if let Some(n) = e.spec.projected_order() {
                assert_eq!(g.order() as u128, n, "{}", e.name);
            }
        }
        assert_eq!(build_group(&preset("quaternion-8").unwrap()).unwrap().order(), 8);
        assert_eq!(build_group(&preset("heisenberg-9").unwrap()).unwrap().order(), 729);
    }

    #[test]
    fn preset_lookup() {
        assert_eq!(preset("heisenberg-3").unwrap(), GroupSpec::unitriangular(3, 3));
        assert_eq!(preset("extraspecial-27-exp9").unwrap(), GroupSpec::semidirect(9, 3, 4));
        assert_eq!(preset("ut4-3").unwrap(), GroupSpec::unitriangular(4, 3));
        assert_eq!(preset("nope"), Err(Error::UnknownPreset("nope".into())));
        let names = preset_names();
        let unique: HashSet<_> = names.iter().collect();
        assert_eq!(unique.len(), names.len());
    }

    #[test]
    fn whole_group_is_the_only_order_27_subgroup_of_ut33() {
        let found = search_subgroups(&GroupSpec::preset("heisenberg-3"), 27, None, 10).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(build_group(&found[0].spec).unwrap().order(), 27);
        assert!(search_subgroups(&GroupSpec::preset("heisenberg-3"), 81, None, 10).unwrap().is_empty());
        assert!(search_subgroups(&GroupSpec::preset("heisenberg-3"), 9, None, 0).unwrap().is_empty());
    }

    #[test]
    fn abstract_ambient_exports_regular_permutations() {
        let found = search_subgroups(&GroupSpec::product(vec![cyc(3), cyc(9)]), 9, None, 10).unwrap();
        // C3 × C9 has four subgroups of order 9, three cyclic and one C3 × C3
        assert_eq!(found.len(), 4);
        for e in &found {
            assert!(matches!(e.spec, GroupSpec::PermutationGroup { degree: 27, .. }));
            assert_eq!(build_group(&e.spec).unwrap().order(), 9);
        }
    }

    #[test]
    fn ambient_cap_enforced() {
        let big = GroupSpec::cyclic(5000);
        assert!(matches!(search_subgroups(&big, 5, None, 1), Err(Error::AmbientTooLarge { .. })));
    }

    #[test]
    fn manifest_round_trip_and_duplicates() {
        let entries = vec![CorpusEntry::new("a", cyc(3), &["abelian"])];
        let json = serde_json::to_string(&entries).unwrap();
        assert_eq!(parse_manifest(&json).unwrap(), entries);
        let dup = serde_json::to_string(&[entries[0].clone(), entries[0].clone()]).unwrap();
        assert!(parse_manifest(&dup).is_err());
        assert!(parse_manifest("{").is_err());
    }
}
