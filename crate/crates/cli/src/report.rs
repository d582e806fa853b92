use std::collections::BTreeMap;

use charkern::group::{abelian_type, Subgroup};
use charkern::invariants::{Analysis, PredicateProfile};
use serde::Serialize;

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub order: usize,
    pub prime: Option<u64>,
    pub exponent: u64,
    pub class: Option<usize>,
    pub center_order: usize,
    pub derived_order: usize,
    pub center_type: Option<Vec<u64>>,
    pub derived_type: Option<Vec<u64>>,
    pub classes: usize,
    /// Degree to number of irreducible characters of that degree.
    pub degrees: BTreeMap<u64, usize>,
    pub kernels: KernelSummary,
    pub predicates: PredicateProfile,
    /// Normal subgroup order to count.
    pub normal_subgroups: BTreeMap<usize, usize>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct KernelSummary {
    pub sk: Vec<usize>,
    pub skn: Vec<usize>,
    pub m_max: Option<u32>,
    /// Distinct non-linear kernels as `(order, characters sharing it)`.
    pub nonlinear_kernels: Vec<(usize, usize)>,
}

impl AnalyzeReport {
    pub fn new(a: &Analysis) -> Self {
        let ty = |s: &Subgroup| abelian_type(&a.group, s).ok();
        AnalyzeReport {
            order: a.group.order(),
            prime: a.p(),
            exponent: a.exponent,
            class: a.class,
            center_order: a.center.order(),
            derived_order: a.derived.order(),
            center_type: ty(&a.center),
            derived_type: ty(&a.derived),
            classes: a.table.len(),
            degrees: a.kernels.cd.clone(),
            kernels: KernelSummary {
                sk: a.kernels.sk.iter().copied().collect(),
                skn: a.kernels.skn.iter().copied().collect(),
                m_max: a.kernels.m_max,
                nonlinear_kernels: a.kernels.kern.iter().map(Subgroup::order).zip(a.kernels.kern_counts.iter().copied()).collect(),
            },
            predicates: a.predicates.clone(),
            normal_subgroups: a.predicates.unique_normal_orders.clone(),
            notes: a
                .predicates
                .k_n
                .map(|_| "k_n counts normal N with G' not contained in N; the trivial subgroup counts, G never does".to_string())
                .into_iter()
                .collect(),
        }
    }
}
