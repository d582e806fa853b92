use fixedbitset::FixedBitSet;

use super::{prime_factors, Group, Subgroup};
use crate::error::{Error, Result};

pub fn center(g: &Group) -> Subgroup {
    let mut set = FixedBitSet::with_capacity(g.order());
    for x in g.elements() {
        if g.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x)) {
            set.insert(x as usize);
        }
    }
    Subgroup::from_set_normal(g, set)
}

/// `G'`, as the normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &Group) -> Subgroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            comms.push(g.commutator(a, b));
        }
    }
    Subgroup::normal_closure(g, &comms)
}

/// `1 = Z₀ < Z₁ < … < Z_c = G`.
pub fn upper_central_series(g: &Group) -> Result<Vec<Subgroup>> {
    let mut series = vec![Subgroup::trivial(g)];
    loop {
        let last = series.last().unwrap();
        if last.is_whole(g) {
            return Ok(series);
        }
        // x Z_i is central in G/Z_i iff [x, s] ∈ Z_i for all generators s
        let mut set = FixedBitSet::with_capacity(g.order());
        for x in g.elements() {
            if g.generators().iter().all(|&s| last.contains(g.commutator(x, s))) {
                set.insert(x as usize);
            }
        }
        let next = Subgroup::from_set_normal(g, set);
        if next.order() == last.order() {
            return Err(Error::SeriesDoesNotTerminate);
        }
        series.push(next);
    }
}

pub fn nilpotency_class(g: &Group) -> Result<usize> {
    match upper_central_series(g) {
        Ok(series) => Ok(series.len() - 1),
        Err(Error::SeriesDoesNotTerminate) => Err(Error::NotNilpotent),
        Err(e) => Err(e),
    }
}

pub fn exponent_of(g: &Group) -> u64 {
    g.elements().fold(1, |acc, x| num_integer::lcm(acc, g.element_order(x)))
}

pub fn exponent_of_subgroup(g: &Group, h: &Subgroup) -> u64 {
    h.members().fold(1, |acc, x| num_integer::lcm(acc, g.element_order(x)))
}

/// Order of the centralizer of `x`.
pub fn centralizer_order(g: &Group, x: u32) -> usize {
    g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count()
}

/// A quotient group together with the projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// `projection[x]` is the coset index of element `x`.
    pub projection: Vec<u32>,
}

/// `G/N`, with cosets indexed in order of their smallest member.
pub fn quotient_group(g: &Group, n: &Subgroup) -> Result<Quotient> {
    if n.parent_id() != g.id() {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut projection = vec![u32::MAX; order];
    let mut reps = Vec::new();
    let members = n.member_vec();
    for x in g.elements() {
        if projection[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in &members {
            projection[g.mul(x, m) as usize] = c;
        }
    }
    let k = reps.len();
    let mut table = vec![0u32; k * k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * k + j] = projection[g.mul(a, b) as usize];
        }
    }
    let gens = g.generators().iter().map(|&s| projection[s as usize]).collect();
    let group = Group::from_table(k, table, gens)?;
    Ok(Quotient { group, projection })
}

/// Invariant factors `d₁ | d₂ | … | d_k` of an abelian subgroup.
///
/// For each prime `p`, the number of elements of `A_p` killed by `p^i` is
/// `p^{Σ_j min(i, λ_j)}` where `λ` is the partition of exponents of the
/// `p`-primary part, so successive ratios of those counts recover how many
/// cyclic factors have exponent at least `i`.
pub fn abelian_type(g: &Group, a: &Subgroup) -> Result<Vec<u64>> {
    if a.parent_id() != g.id() {
        return Err(Error::ParentMismatch);
    }
    if !a.is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    let orders: Vec<u64> = a.members().map(|x| g.element_order(x)).collect();
    // primary parts, each a partition listed largest first
    let mut primary: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(a.order() as u64) {
        let p_part: Vec<u64> = orders.iter().copied().filter(|&o| super::exact_log(o, p).is_some()).collect();
        let max_e = p_part.iter().map(|&o| super::exact_log(o, p).unwrap()).max().unwrap_or(0);
        let log_count = |i: u32| -> u32 {
            let bound = p.pow(i);
            let c = p_part.iter().filter(|&&o| bound % o == 0).count() as u64;
            super::exact_log(c, p).expect("omega count is a p-power")
        };
        // parts_at_least[i] = number of cyclic factors with exponent ≥ i
        let mut parts = Vec::new();
        for i in 1..=max_e {
            let at_least = log_count(i) - log_count(i - 1);
            parts.push(at_least);
        }
        let rank = parts.first().copied().unwrap_or(0);
        let lambda: Vec<u32> = (0..rank)
            .map(|j| parts.iter().filter(|&&c| c > j).count() as u32)
            .collect();
        primary.push((p, lambda));
    }
    let len = primary.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|j| primary.iter().map(|(p, l)| l.get(j).map_or(1, |&e| p.pow(e))).product())
        .collect();
    factors.reverse();
    Ok(factors)
}

pub fn abelian_type_of_group(g: &Group) -> Result<Vec<u64>> {
    abelian_type(g, &Subgroup::whole(g))
}

/// True when `a` is abelian with every non-identity element of order `p`.
pub fn is_elementary_abelian(g: &Group, a: &Subgroup, p: u64) -> bool {
    a.is_abelian(g) && a.members().all(|x| x == 0 || g.element_order(x) == p)
}
