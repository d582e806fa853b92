use serde::Serialize;

use super::Group;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClass {
    /// Smallest member index.
    pub rep: u32,
    /// Sorted member indices.
    pub members: Vec<u32>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy classes ordered by minimal member, so class 0 is `{1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassSet {
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<u32>,
}

impl ConjClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjClass::size).collect()
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    /// Index of the class containing the inverses of class `i`.
    pub fn inverse_class(&self, g: &Group, i: usize) -> usize {
        self.class_of(g.inv(self.classes[i].rep))
    }
}

pub fn conjugacy_classes(g: &Group) -> ConjClassSet {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n as u32 {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let idx = classes.len() as u32;
        class_of[x as usize] = idx;
        let mut members = vec![x];
        let mut head = 0;
        // orbit under conjugation by generators
        while head < members.len() {
            let y = members[head];
            head += 1;
            for &s in g.generators() {
                let c = g.conjugate(y, s);
                if class_of[c as usize] == u32::MAX {
                    class_of[c as usize] = idx;
                    members.push(c);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjClass { rep: x, members });
    }
    ConjClassSet { classes, class_of }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    /// Classes straight from the definition: conjugate by every element.
    fn brute_classes(g: &Group) -> Vec<Vec<u32>> {
        let mut seen = vec![false; g.order()];
        let mut out = Vec::new();
        for x in g.elements() {
            if seen[x as usize] {
                continue;
            }
            let mut c: Vec<u32> = g.elements().map(|y| g.conjugate(x, y)).collect();
            c.sort_unstable();
            c.dedup();
            for &y in &c {
                seen[y as usize] = true;
            }
            out.push(c);
        }
        out
    }

    #[test]
    fn cyclic_has_singleton_classes() {
        let g = build_group(&GroupSpec::cyclic(9)).unwrap();
        let cc = conjugacy_classes(&g);
        assert_eq!(cc.len(), 9);
        assert!(cc.classes.iter().all(|c| c.size() == 1));
    }

    #[test]
    fn heisenberg_classes_match_brute_force() {
        let g = build_group(&GroupSpec::unitriangular(3, 3)).unwrap();
        let cc = conjugacy_classes(&g);
        assert_eq!(cc.len(), 11);
        let mut sizes = cc.sizes();
        sizes.sort();
        assert_eq!(sizes, [1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3]);
        let ours: Vec<Vec<u32>> = cc.classes.iter().map(|c| c.members.clone()).collect();
        assert_eq!(ours, brute_classes(&g));
        assert_eq!(cc.classes[0].members, vec![0]);
    }

    #[test]
    fn class_equation_on_nonabelian_groups() {
        for spec in [
            GroupSpec::semidirect(9, 3, 4),
            GroupSpec::unitriangular(4, 3),
            GroupSpec::PermutationGroup { degree: 4, generators: vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]] },
        ] {
            let g = build_group(&spec).unwrap();
            let cc = conjugacy_classes(&g);
            assert_eq!(cc.sizes().iter().sum::<usize>(), g.order());
            assert!(cc.sizes().iter().all(|h| g.order() % h == 0));
        }
    }
}
