use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::Group;
use crate::error::{Error, Result};

/// A subgroup of a parent [`Group`], stored as a membership bitset over the
/// parent's element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: u64,
    set: FixedBitSet,
    order: usize,
    normal: bool,
}

impl Subgroup {
    /// Wraps a set already known to be a subgroup. Normality is tested by
    /// conjugating by the parent's generators.
    pub(crate) fn from_set(g: &Group, set: FixedBitSet) -> Self {
        let order = set.count_ones(..);
        let normal = set
            .ones()
            .all(|x| g.generators().iter().all(|&y| set.contains(g.conjugate(x as u32, y) as usize)));
        Subgroup { parent: g.id(), set, order, normal }
    }

    pub(crate) fn from_set_normal(g: &Group, set: FixedBitSet) -> Self {
        let order = set.count_ones(..);
        Subgroup { parent: g.id(), set, order, normal: true }
    }

    /// Checks closure and builds a subgroup from an explicit member list.
    pub fn from_members(g: &Group, members: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut set = FixedBitSet::with_capacity(g.order());
        for x in members {
            if x as usize >= g.order() {
                return Err(Error::SpecInvalid(format!("element {x} out of range")));
            }
            set.insert(x as usize);
        }
        if !set.contains(0) {
            return Err(Error::SpecInvalid("subgroup must contain the identity".into()));
        }
        for a in set.ones() {
            if !set.contains(g.inv(a as u32) as usize) {
                return Err(Error::SpecInvalid("not closed under inverses".into()));
            }
            for b in set.ones() {
                if !set.contains(g.mul(a as u32, b as u32) as usize) {
                    return Err(Error::SpecInvalid("not closed under multiplication".into()));
                }
            }
        }
        Ok(Self::from_set(g, set))
    }

    pub fn trivial(g: &Group) -> Self {
        let mut set = FixedBitSet::with_capacity(g.order());
        set.insert(0);
        Self::from_set_normal(g, set)
    }

    pub fn whole(g: &Group) -> Self {
        let mut set = FixedBitSet::with_capacity(g.order());
        set.insert_range(..);
        Self::from_set_normal(g, set)
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &Group, gens: &[u32]) -> Self {
        let set = closure(g, FixedBitSet::with_capacity(g.order()), gens, false);
        Self::from_set(g, set)
    }

    /// The smallest normal subgroup containing `elems`.
    pub fn normal_closure(g: &Group, elems: &[u32]) -> Self {
        let set = closure(g, FixedBitSet::with_capacity(g.order()), elems, true);
        Self::from_set_normal(g, set)
    }

    pub fn parent_id(&self) -> u64 {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, x: u32) -> bool {
        self.set.contains(x as usize)
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.set.ones().map(|x| x as u32)
    }

    pub fn member_vec(&self) -> Vec<u32> {
        self.members().collect()
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.set.is_subset(&other.set)
    }

    pub fn is_whole(&self, g: &Group) -> bool {
        self.order == g.order()
    }

    /// Order of the product `self · other`, via `|A||B| / |A ∩ B|`.
    pub fn product_order(&self, other: &Subgroup) -> usize {
        let common = self.set.intersection(&other.set).count();
        self.order * other.order / common
    }

    /// True when every pair of members commutes.
    pub fn is_abelian(&self, g: &Group) -> bool {
        let m = self.member_vec();
        m.iter().enumerate().all(|(i, &a)| m[i + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }
}

/// `A ∩ B`; normal when both inputs are.
pub fn intersect(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if a.parent != b.parent {
        return Err(Error::ParentMismatch);
    }
    let mut set = a.set.clone();
    set.intersect_with(&b.set);
    let order = set.count_ones(..);
    // intersection of normal subgroups is normal; otherwise leave the
    // flag conservative.
    Ok(Subgroup { parent: a.parent, set, order, normal: a.normal && b.normal })
}

/// Closes `start ∪ gens` under multiplication (and conjugation by the
/// group generators when `normal` is set). Returns the membership set.
pub(crate) fn closure(g: &Group, mut set: FixedBitSet, gens: &[u32], normal: bool) -> FixedBitSet {
    set.grow(g.order());
    set.insert(0);
    let mut gens: Vec<u32> = gens.iter().copied().filter(|&x| x != 0).collect();
    if normal {
        // conjugates of the generating set, closed under the group generators
        let mut seen = FixedBitSet::with_capacity(g.order());
        let mut stack = gens.clone();
        for &x in &gens {
            seen.insert(x as usize);
        }
        while let Some(x) = stack.pop() {
            for &y in g.generators() {
                let c = g.conjugate(x, y);
                if !seen.put(c as usize) {
                    stack.push(c);
                    gens.push(c);
                }
            }
        }
    }
    let mut queue: Vec<u32> = set.ones().map(|x| x as u32).collect();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in &gens {
            let y = g.mul(x, s) as usize;
            if !set.put(y) {
                queue.push(y as u32);
            }
        }
    }
    set
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.set == other.set
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.set.as_slice().hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by size, then lexicographically by sorted member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members().cmp(other.members()))
            .then_with(|| self.parent.cmp(&other.parent))
    }
}
