//! Fixtures shared by the benchmarks.

use charkern::{build_group, Group, GroupSpec};

/// Groups of increasing size with different class structure.
pub fn fixtures() -> Vec<(&'static str, Group)> {
    [
        ("heisenberg-3", GroupSpec::unitriangular(3, 3)),
        ("ut4-3", GroupSpec::unitriangular(4, 3)),
        ("heisenberg-5-x-c5", GroupSpec::product(vec![GroupSpec::unitriangular(3, 5), GroupSpec::cyclic(5)])),
        ("heisenberg-9", GroupSpec::preset("heisenberg-9")),
    ]
    .into_iter()
    .map(|(name, spec)| (name, build_group(&spec).expect("fixture builds")))
    .collect()
}
