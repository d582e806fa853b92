//! One check per registered claim. Each returns the raw outcome; the
//! caller attaches group name and scope notes.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::group::{
    abelian_type, abelian_type_of_group, center, exponent_of_subgroup, intersect, is_elementary_abelian,
    normal_subgroups_oracle, quotient_group, Group, Subgroup,
};
use crate::invariants::{is_gcp, nonlinear_kernel_intersection, unique_normal_of_order, Analysis, UniqueNormal};

/// Groups above this order skip the class-union lattice oracle.
pub const LATTICE_ORACLE_MAX_ORDER: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Outcome {
    Pass(Option<Value>),
    Fail(Value),
    NotApplicable(String),
}

use Outcome::{Fail, NotApplicable, Pass};

fn pass() -> Outcome {
    Pass(None)
}

fn na(msg: impl Into<String>) -> Outcome {
    NotApplicable(msg.into())
}

fn both_false(detail: impl AsRef<str>) -> Outcome {
    NotApplicable(format!("both-false: {}", detail.as_ref()))
}

fn check(ok: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if ok {
        pass()
    } else {
        Fail(witness())
    }
}

/// `(p, n)` for a p-group, else the not-applicable outcome.
fn p_group(a: &Analysis) -> Result<(u64, u32), Outcome> {
    a.prime_power.ok_or_else(|| na("order is not a prime power"))
}

fn nonabelian_p_group(a: &Analysis) -> Result<(u64, u32), Outcome> {
    let pn = p_group(a)?;
    if a.is_abelian() {
        return Err(na("G is abelian (no non-linear characters)"));
    }
    Ok(pn)
}

fn skn_json(a: &Analysis) -> Value {
    json!(a.kernels.skn)
}

fn z_type(a: &Analysis) -> Vec<u64> {
    abelian_type(&a.group, &a.center).expect("the center is abelian")
}

fn is_elementary_of_rank(a: &Analysis, s: &Subgroup, p: u64) -> Option<usize> {
    if !is_elementary_abelian(&a.group, s, p) {
        return None;
    }
    let mut r = 0;
    let mut k = s.order();
    while k > 1 {
        k /= p as usize;
        r += 1;
    }
    Some(r)
}

/// `skn = {p^m}` with `m ≥ 1`.
fn uniform_positive_m(a: &Analysis, p: u64) -> Option<u32> {
    a.kernels.uniform_m(p).filter(|&m| m >= 1)
}

/// Exponent of `G/N` from element orders modulo `N`.
fn exponent_mod(g: &Group, n: &Subgroup) -> u64 {
    g.elements().fold(1, |acc, x| {
        let mut k = 1u64;
        let mut y = x;
        while !n.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        num_integer::lcm(acc, k)
    })
}

fn isqrt_exact(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == n)
}

pub(crate) fn l2_2(a: &Analysis) -> Outcome {
    let n = a.group.order();
    if n > LATTICE_ORACLE_MAX_ORDER {
        return na(format!("lattice oracle limited to |G| <= {LATTICE_ORACLE_MAX_ORDER}"));
    }
    let oracle = normal_subgroups_oracle(&a.group, a.table.classes());
    let ours: BTreeSet<Vec<u32>> = a.normals.iter().map(Subgroup::member_vec).collect();
    let theirs: BTreeSet<Vec<u32>> = oracle.iter().map(Subgroup::member_vec).collect();
    check(ours == theirs, || {
        let missing: Vec<usize> = theirs.difference(&ours).map(Vec::len).collect();
        let extra: Vec<usize> = ours.difference(&theirs).map(Vec::len).collect();
        json!({
            "kernel_closure_count": ours.len(),
            "oracle_count": theirs.len(),
            "missing_orders": missing,
            "extra_orders": extra,
        })
    })
}

pub(crate) fn l2_3(a: &Analysis) -> Outcome {
    if a.is_abelian() {
        return na("G is abelian (no non-linear characters)");
    }
    let meet = nonlinear_kernel_intersection(&a.kernels).expect("non-abelian groups have non-linear characters");
    check(meet.is_trivial(), || json!({ "intersection": meet.member_vec() }))
}

pub(crate) fn l2_4(a: &Analysis) -> Outcome {
    let g = &a.group;
    for (i, c) in a.table.characters().iter().enumerate() {
        for z in c.center().members() {
            for &s in g.generators() {
                let comm = g.commutator(z, s);
                if !c.kernel().contains(comm) {
                    return Fail(json!({ "character": i, "center_element": z, "generator": s, "commutator": comm }));
                }
            }
        }
    }
    pass()
}

pub(crate) fn l2_15(a: &Analysis) -> Outcome {
    if let Err(o) = p_group(a) {
        return o;
    }
    for (i, c) in a.table.characters().iter().enumerate() {
        if c.is_trivial() {
            continue;
        }
        let strict = c.kernel().is_subgroup_of(c.center()) && c.kernel().order() < c.center().order();
        if !strict {
            return Fail(json!({
                "character": i,
                "kernel_order": c.kernel().order(),
                "center_order": c.center().order(),
            }));
        }
    }
    pass()
}

pub(crate) fn l2_5(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let lhs = a.kernels.skn == BTreeSet::from([1]);
    let zt = z_type(a);
    let rhs = a.derived.order() == p as usize && zt.len() <= 1;
    let w = || json!({ "skn": skn_json(a), "derived_order": a.derived.order(), "center_type": zt });
    match (lhs, rhs) {
        (true, true) => pass(),
        (false, false) => both_false("skn != {1}; |G'| != p or Z(G) not cyclic"),
        _ => Fail(w()),
    }
}

pub(crate) fn l2_6(a: &Analysis) -> Outcome {
    if let Err(o) = nonabelian_p_group(a) {
        return o;
    }
    let m = a.kernels.m_max.expect("non-abelian p-group has m_max");
    if m == 0 {
        return na("skn = {1}: no positive m with p^m in skn");
    }
    let c = a.class.expect("p-groups are nilpotent");
    check(c <= m as usize + 2, || json!({ "class": c, "m": m }))
}

pub(crate) fn t2_8(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    if a.class != Some(2) {
        return na(format!("nilpotency class is {:?}, not 2", a.class));
    }
    let (strong, weak) = (a.predicates.strong_condition, a.predicates.weak_condition);
    if !weak {
        return na("weak condition on normal subgroups fails");
    }
    let e_quot = exponent_mod(&a.group, &a.center);
    let e_der = exponent_of_subgroup(&a.group, &a.derived);
    let w = |extra: Value| {
        json!({ "strong": strong, "exp_G_mod_Z": e_quot, "exp_derived": e_der, "detail": extra })
    };
    if strong && !(e_quot == p && e_der == p) {
        return Fail(w(json!("strong condition but exponents are not both p")));
    }
    if e_quot != e_der || !(e_quot == p || e_quot == p * p) {
        return Fail(w(json!("weak condition but exponents are not equal to p or p^2")));
    }
    if e_quot == p * p {
        let q = quotient_group(&a.group, &a.center).expect("the center is normal");
        let qt = abelian_type_of_group(&q.group).expect("class 2 gives abelian G/Z");
        let dt = abelian_type(&a.group, &a.derived).expect("class 2 gives abelian G'");
        if qt != vec![p * p, p * p] || dt != vec![p * p] {
            return Fail(w(json!({ "quotient_type": qt, "derived_type": dt })));
        }
    }
    pass()
}

pub(crate) fn l2_9(a: &Analysis) -> Outcome {
    let (p, _) = match p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    if a.derived.order() != p as usize {
        return na("|G'| != p");
    }
    let index = a.group.order() / a.center.order();
    let Some(f) = isqrt_exact(index) else {
        return Fail(json!({ "center_index": index, "detail": "|G/Z(G)| is not a square" }));
    };
    let expected = BTreeSet::from([1, f as u64]);
    let cd = a.kernels.degrees();
    check(cd == expected && a.predicates.strong_condition, || {
        json!({ "cd": cd, "expected_cd": expected, "strong": a.predicates.strong_condition })
    })
}

pub(crate) fn l2_10(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let j = a.predicates.j_group.expect("non-abelian");
    let rhs = a.derived.is_subgroup_of(&a.center) && exponent_of_subgroup(&a.group, &a.derived) == p;
    match (j, rhs) {
        (true, true) => pass(),
        (false, false) => both_false("not a J-group; G' not central of exponent p"),
        _ => Fail(json!({
            "j_group": j,
            "derived_central": a.derived.is_subgroup_of(&a.center),
            "exp_derived": exponent_of_subgroup(&a.group, &a.derived),
            "kern_orders": a.kernels.kern.iter().map(Subgroup::order).collect::<Vec<_>>(),
        })),
    }
}

pub(crate) fn c2_11(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let Some(m) = uniform_positive_m(a, p) else {
        return na(format!("skn = {:?} is not {{p^m}} with m >= 1", a.kernels.skn));
    };
    let e = exponent_of_subgroup(&a.group, &a.derived);
    let j = a.predicates.j_group == Some(true);
    check(e == p && j, || json!({ "m": m, "exp_derived": e, "j_group": j }))
}

pub(crate) fn l2_12(a: &Analysis) -> Outcome {
    let (p, n) = match p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    if !a.is_abelian() {
        return na("G is not abelian");
    }
    let e = crate::group::exact_log(a.exponent, p).expect("exponent of a p-group is a p-power");
    let expected: BTreeSet<usize> = (n - e..=n).map(|k| p.pow(k) as usize).collect();
    check(a.kernels.sk == expected, || json!({ "sk": a.kernels.sk, "expected": expected }))
}

pub(crate) fn l2_13(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let m = a.kernels.m_max.expect("non-abelian p-group has m_max");
    let pm = p.pow(m) as usize;
    if a.derived.order() <= pm {
        return pass();
    }
    let unique = unique_normal_of_order(&a.normals, pm * p as usize);
    check(unique.unique() == Some(&a.derived), || {
        let count = match &unique {
            UniqueNormal::Unique(_) => 1,
            UniqueNormal::NotUnique(k) => *k,
        };
        json!({ "m": m, "derived_order": a.derived.order(), "normals_of_order_p^(m+1)": count })
    })
}

pub(crate) fn l2_14(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let m = a.kernels.m_max.expect("non-abelian p-group has m_max");
    let target = p.pow(m) as usize;
    for (i, c) in a.table.characters().iter().enumerate() {
        if c.is_linear() || c.kernel().order() != target {
            continue;
        }
        let index = (a.group.order() / c.center().order()) as u64;
        if c.degree() * c.degree() != index {
            return Fail(json!({ "character": i, "degree": c.degree(), "center_index": index }));
        }
    }
    pass()
}

pub(crate) fn t2_16(a: &Analysis) -> Outcome {
    let (p, n) = match p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let lhs = a.kernels.skn == BTreeSet::from([1, p as usize]);
    let rhs = n == 4 && a.class == Some(3);
    match (lhs, rhs) {
        (true, true) => pass(),
        (false, false) => both_false(format!(
            "skn = {:?} is not {{1, p}}; not of order p^4 and maximal class",
            a.kernels.skn
        )),
        _ => Fail(json!({ "skn": skn_json(a), "order": a.group.order(), "class": a.class })),
    }
}

pub(crate) fn t2_19(a: &Analysis) -> Outcome {
    if let Err(o) = nonabelian_p_group(a) {
        return o;
    }
    if !a.predicates.gcp_with_center {
        return na("(G, Z(G)) is not a generalized Camina pair");
    }
    gcp_value_formula(a)
}

/// Non-linear characters are `f·λ` on `Z(G)` and zero off it, with `λ`
/// running injectively over `Irr(Z(G) | G')`.
fn gcp_value_formula(a: &Analysis) -> Outcome {
    let g = &a.group;
    let z = &a.center;
    let index = g.order() / z.order();
    let Some(f) = isqrt_exact(index) else {
        return Fail(json!({ "center_index": index, "detail": "|G/Z(G)| is not a square" }));
    };
    let cd = a.kernels.degrees();
    if cd != BTreeSet::from([1, f as u64]) {
        return Fail(json!({ "cd": cd, "expected_degree": f }));
    }
    let classes = a.table.classes();
    let e = a.table.e();
    let zs: Vec<u32> = z.member_vec();
    let mut lambdas: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut count = 0;
    for (i, c) in a.table.characters().iter().enumerate() {
        if c.is_linear() {
            continue;
        }
        count += 1;
        let mut lambda = Vec::with_capacity(zs.len());
        for (k, cl) in classes.classes.iter().enumerate() {
            if z.contains(cl.rep) {
                match c.sparse_multiplicities(k) {
                    [(j, m)] if *m as usize == f => lambda.push((cl.rep, *j)),
                    _ => return Fail(json!({ "character": i, "class": k, "detail": "value on Z(G) is not f times a root of unity" })),
                }
            } else if !a.table.vanishes_at(i, k) {
                return Fail(json!({ "character": i, "class": k, "detail": "non-zero off Z(G)" }));
            }
        }
        lambda.sort_unstable();
        let exps: BTreeMap<u32, u32> = lambda.into_iter().collect();
        for &x in &zs {
            for &y in &zs {
                if (exps[&x] + exps[&y]) % e != exps[&g.mul(x, y)] {
                    return Fail(json!({ "character": i, "detail": "restriction to Z(G) is not f times a homomorphism", "elements": [x, y] }));
                }
            }
        }
        if a.derived.members().all(|d| exps[&d] == 0) {
            return Fail(json!({ "character": i, "detail": "G' lies in the kernel of lambda" }));
        }
        if !lambdas.insert(exps.into_values().collect()) {
            return Fail(json!({ "character": i, "detail": "two characters share lambda" }));
        }
    }
    let expected = z.order() - z.order() / a.derived.order();
    check(count == expected, || json!({ "nonlinear_count": count, "irr_z_over_derived": expected }))
}

pub(crate) fn l2_20(a: &Analysis) -> Outcome {
    let (p, _) = match p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    if a.derived.order() != p as usize {
        return na("|G'| != p");
    }
    match is_gcp(&a.group, &a.center, &a.table) {
        Ok(true) => {}
        Ok(false) => return Fail(json!({ "detail": "(G, Z(G)) is not a generalized Camina pair" })),
        Err(e) => return Fail(json!({ "detail": e.to_string() })),
    }
    for (i, c) in a.table.characters().iter().enumerate() {
        if !c.is_linear() && c.center() != &a.center {
            return Fail(json!({ "character": i, "detail": "Z(chi) != Z(G)", "center_order": c.center().order() }));
        }
    }
    pass()
}

pub(crate) fn p3_1(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let Some(m) = uniform_positive_m(a, p) else {
        return na(format!("skn = {:?} is not {{p^m}} with m >= 1", a.kernels.skn));
    };
    let e = exponent_mod(&a.group, &a.center);
    let abelian_quotient = a.derived.is_subgroup_of(&a.center);
    check(a.class == Some(2) && abelian_quotient && e == p, || {
        json!({ "m": m, "class": a.class, "exp_G_mod_Z": e })
    })
}

pub(crate) fn l3_2(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let Some(m) = uniform_positive_m(a, p) else {
        return na(format!("skn = {:?} is not {{p^m}} with m >= 1", a.kernels.skn));
    };
    let size = p.pow(m + 1) as usize;
    if unique_normal_of_order(&a.normals, size).unique() != Some(&a.derived) {
        return na("G' is not the unique normal subgroup of order p^(m+1)");
    }
    check(is_elementary_abelian(&a.group, &a.derived, p), || {
        json!({ "m": m, "derived_type": abelian_type(&a.group, &a.derived).ok() })
    })
}

pub(crate) fn l3_3(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    if a.derived.order() != p as usize {
        return na("|G'| != p");
    }
    let Some(m) = a.kernels.uniform_m(p) else {
        return na(format!("skn = {:?} is not a single p-power", a.kernels.skn));
    };
    let ratio = a.center.order() as u64 / exponent_of_subgroup(&a.group, &a.center);
    check(ratio == p.pow(m), || json!({ "m": m, "center_order": a.center.order(), "ratio": ratio }))
}

pub(crate) fn l3_4(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    if a.derived.order() != p as usize {
        return na("|G'| != p");
    }
    let lhs = a.kernels.skn == BTreeSet::from([p as usize]);
    let zt = z_type(a);
    let rhs = zt == vec![p, p];
    let kmn = (a.predicates.k_m, a.predicates.k_n);
    let w = || json!({ "skn": skn_json(a), "center_type": zt, "k_m": kmn.0, "k_n": kmn.1 });
    match (lhs, rhs) {
        (true, true) => {
            let k = p as usize;
            check(kmn == (Some(k), Some(k + 1)), w)
        }
        (false, false) => both_false("skn != {p}; Z(G) not C_p x C_p"),
        _ => Fail(w()),
    }
}

pub(crate) fn p3_5(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let pu = p as usize;
    let lhs = a.kernels.skn == BTreeSet::from([pu]);
    let zt = z_type(a);
    let first = a.derived.order() == pu && zt == vec![p, p];
    let second = is_elementary_of_rank(a, &a.derived, p) == Some(2)
        && unique_normal_of_order(&a.normals, pu * pu).unique() == Some(&a.derived);
    let rhs = a.class == Some(2) && (first || second);
    match (lhs, rhs) {
        (true, true) => pass(),
        (false, false) => both_false("skn != {p}; neither structural condition holds in class 2"),
        _ => Fail(json!({
            "skn": skn_json(a),
            "class": a.class,
            "derived_order": a.derived.order(),
            "center_type": zt,
            "first": first,
            "second": second,
        })),
    }
}

pub(crate) fn p3_6(a: &Analysis) -> Outcome {
    let (p, _) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    if a.derived.order() != p as usize {
        return na("|G'| != p");
    }
    let lhs = uniform_positive_m(a, p);
    let rank = is_elementary_of_rank(a, &a.center, p).filter(|&r| r >= 2);
    match (lhs, rank) {
        (Some(m), Some(r)) if r == m as usize + 1 => pass(),
        (None, None) => both_false("skn is not {p^m} with m >= 1; Z(G) not elementary abelian of rank >= 2"),
        _ => Fail(json!({ "skn": skn_json(a), "center_type": z_type(a) })),
    }
}

/// Which branches of the structural side hold for a given `m`.
struct Branches {
    first: bool,
    second: bool,
}

fn branches(a: &Analysis, p: u64, m: u32, quotient_cache: &mut BTreeMap<Vec<u32>, bool>) -> Branches {
    let size = p.pow(m + 1) as usize;
    let first = a.derived.order() == size
        && is_elementary_abelian(&a.group, &a.derived, p)
        && unique_normal_of_order(&a.normals, size).unique() == Some(&a.derived);
    let second = {
        let f2 = a.group.order() / size;
        let cd_ok = a.group.order() % size == 0
            && isqrt_exact(f2).is_some_and(|f| a.kernels.degrees() == BTreeSet::from([1, f as u64]));
        cd_ok && centers_elementary(a, p, quotient_cache)
    };
    Branches { first: a.class == Some(2) && first, second: a.class == Some(2) && second }
}

/// `Z(G/(G' ∩ ker χ))` is elementary abelian for every non-linear `χ`.
fn centers_elementary(a: &Analysis, p: u64, cache: &mut BTreeMap<Vec<u32>, bool>) -> bool {
    a.kernels.kern.iter().all(|k| {
        let n = intersect(&a.derived, k).expect("same parent");
        *cache.entry(n.member_vec()).or_insert_with(|| {
            let q = quotient_group(&a.group, &n).expect("intersection of normal subgroups is normal");
            let zq = center(&q.group);
            is_elementary_abelian(&q.group, &zq, p)
        })
    })
}

pub(crate) fn t_main(a: &Analysis) -> Outcome {
    let (p, n) = match nonabelian_p_group(a) {
        Ok(pn) => pn,
        Err(o) => return o,
    };
    let lhs_m = uniform_positive_m(a, p);
    let mut cache = BTreeMap::new();
    let mut held: Vec<Value> = Vec::new();
    for m in 1..n {
        let b = branches(a, p, m, &mut cache);
        let lhs = lhs_m == Some(m);
        let rhs = b.first || b.second;
        if lhs != rhs {
            return Fail(json!({
                "m": m,
                "skn": skn_json(a),
                "class": a.class,
                "condition1": b.first,
                "condition2": b.second,
                "derived_order": a.derived.order(),
                "cd": a.kernels.degrees(),
            }));
        }
        if rhs {
            let parenthetical = if b.second && !b.first {
                let ok = a.derived.order() <= p.pow(m) as usize;
                if !ok {
                    return Fail(json!({
                        "m": m,
                        "detail": "condition 2 holds but |G'| > p^m",
                        "derived_order": a.derived.order(),
                    }));
                }
                Some(true)
            } else {
                None
            };
            held.push(json!({
                "m": m,
                "condition1": b.first,
                "condition2": b.second,
                "derived_at_most_p^m": parenthetical,
            }));
        }
    }
    if held.is_empty() {
        return both_false(format!(
            "skn = {:?} is not {{p^m}} with m >= 1; neither condition holds for any m",
            a.kernels.skn
        ));
    }
    Pass(Some(json!({ "branches": held, "parenthetical": "|G'| <= p^m read as a consequence of condition 2" })))
}
