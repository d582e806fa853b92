//! Claim registry, per-group checks and corpus runs.

mod claims;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::catalog::CorpusEntry;
use crate::error::{Error, Result};
use crate::group::build_group_with_cap;
use crate::invariants::{analyze, Analysis};

pub use claims::LATTICE_ORACLE_MAX_ORDER;
use claims::Outcome;

pub const P2_SCOPE_NOTE: &str = "p=2: outside the odd-prime hypothesis, exploratory";
const T2_16_SCOPE_NOTE: &str = "exploratory: enforced only for p=3 at order 81";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub claim: String,
    pub group: String,
    pub verdict: Verdict,
    pub witness: Option<Value>,
    pub scope_note: String,
}

impl VerdictReport {
    /// A fail that counts against the run. Exploratory reports never do.
    pub fn is_in_scope_fail(&self) -> bool {
        self.verdict == Verdict::Fail && self.scope_note.is_empty()
    }
}

pub struct ClaimInfo {
    pub id: &'static str,
    pub statement: &'static str,
    check: fn(&Analysis) -> Outcome,
    /// Still enforced when `p = 2`.
    parity_free: bool,
}

pub static CLAIMS: &[ClaimInfo] = &[
    ClaimInfo { id: "L2.2", statement: "normal subgroups are exactly the intersections of character kernels", check: claims::l2_2, parity_free: true },
    ClaimInfo { id: "L2.3", statement: "the non-linear kernels of a non-abelian group intersect trivially", check: claims::l2_3, parity_free: true },
    ClaimInfo { id: "L2.4", statement: "[Z(chi), G] lies in ker chi", check: claims::l2_4, parity_free: true },
    ClaimInfo { id: "L2.5", statement: "skn = {1} iff |G'| = p and Z(G) is cyclic", check: claims::l2_5, parity_free: false },
    ClaimInfo { id: "L2.6", statement: "c(G) <= m + 2 for the largest positive m with p^m in skn", check: claims::l2_6, parity_free: false },
    ClaimInfo { id: "T2.8", statement: "class 2: strong gives exp G/Z = exp G' = p; weak gives p or p^2 with types [p^2,p^2] and [p^2]", check: claims::t2_8, parity_free: false },
    ClaimInfo { id: "L2.9", statement: "|G'| = p gives cd = {1, |G/Z|^(1/2)} and the strong condition", check: claims::l2_9, parity_free: false },
    ClaimInfo { id: "L2.10", statement: "J-group iff G' is central of exponent p", check: claims::l2_10, parity_free: false },
    ClaimInfo { id: "C2.11", statement: "skn = {p^m}, m >= 1 gives a J-group with exp G' = p", check: claims::c2_11, parity_free: false },
    ClaimInfo { id: "L2.12", statement: "abelian: sk = {p^(n-e), ..., p^n}", check: claims::l2_12, parity_free: true },
    ClaimInfo { id: "L2.13", statement: "|G'| <= p^m, or G' is the unique normal subgroup of order p^(m+1)", check: claims::l2_13, parity_free: false },
    ClaimInfo { id: "L2.14", statement: "chi with |ker chi| = p^m (m largest) has chi(1)^2 = |G/Z(chi)|", check: claims::l2_14, parity_free: false },
    ClaimInfo { id: "L2.15", statement: "ker chi is a proper subgroup of Z(chi) for chi != 1", check: claims::l2_15, parity_free: true },
    ClaimInfo { id: "T2.16", statement: "skn = {1, p} iff |G| = p^4 and G has maximal class", check: claims::t2_16, parity_free: false },
    ClaimInfo { id: "T2.19", statement: "GCP (G, Z): cd = {1, f}, chi = f*lambda on Z, zero off Z, bijective with Irr(Z | G')", check: claims::t2_19, parity_free: false },
    ClaimInfo { id: "L2.20", statement: "|G'| = p gives a GCP (G, Z) with Z(chi) = Z(G)", check: claims::l2_20, parity_free: false },
    ClaimInfo { id: "P3.1", statement: "skn = {p^m}, m >= 1 gives class 2 and G/Z elementary abelian", check: claims::p3_1, parity_free: false },
    ClaimInfo { id: "L3.2", statement: "skn = {p^m}, m >= 1 with G' unique normal of order p^(m+1) gives G' elementary abelian", check: claims::l3_2, parity_free: false },
    ClaimInfo { id: "L3.3", statement: "|G'| = p and skn = {p^m} give |Z|/exp Z = p^m", check: claims::l3_3, parity_free: false },
    ClaimInfo { id: "L3.4", statement: "|G'| = p: skn = {p} iff Z = C_p x C_p, and then K(p, p+1)", check: claims::l3_4, parity_free: false },
    ClaimInfo { id: "P3.5", statement: "skn = {p} iff class 2 and (|G'| = p, Z = C_p^2) or (G' = C_p^2 unique normal of order p^2)", check: claims::p3_5, parity_free: false },
    ClaimInfo { id: "P3.6", statement: "|G'| = p: skn = {p^m}, m >= 1 iff Z = C_p^(m+1)", check: claims::p3_6, parity_free: false },
    ClaimInfo { id: "T-MAIN", statement: "skn = {p^m}, m >= 1 iff class 2 and (condition 1 or condition 2)", check: claims::t_main, parity_free: false },
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

pub fn claim_info(id: &str) -> Result<&'static ClaimInfo> {
    CLAIMS.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

/// Resolves a claim filter; `None` selects the whole registry.
pub fn resolve_claims(filter: Option<&[String]>) -> Result<Vec<&'static str>> {
    match filter {
        None => Ok(claim_ids()),
        Some(ids) => ids.iter().map(|id| claim_info(id).map(|c| c.id)).collect(),
    }
}

/// Scope note for an applicable verdict; empty means the result is enforced.
fn scope_note(info: &ClaimInfo, a: &Analysis) -> Option<&'static str> {
    match a.prime_power {
        Some((2, _)) if !info.parity_free => Some(P2_SCOPE_NOTE),
        Some((p, n)) if info.id == "T2.16" && !(p == 3 && n == 4) => Some(T2_16_SCOPE_NOTE),
        _ => None,
    }
}

pub fn verify_claim(claim_id: &str, group_name: &str, a: &Analysis) -> Result<VerdictReport> {
    let info = claim_info(claim_id)?;
    let note = scope_note(info, a);
    let (verdict, witness, scope_note) = match (info.check)(a) {
        Outcome::Pass(w) => (Verdict::Pass, w, note.unwrap_or_default().to_string()),
        Outcome::Fail(w) => (Verdict::Fail, Some(w), note.unwrap_or_default().to_string()),
        Outcome::NotApplicable(why) => {
            let s = match note {
                Some(n) => format!("{n}; {why}"),
                None => why,
            };
            (Verdict::NotApplicable, None, s)
        }
    };
    Ok(VerdictReport { claim: info.id.to_string(), group: group_name.to_string(), verdict, witness, scope_note })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimCounts {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub in_scope_fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryError {
    pub group: String,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub groups: usize,
    pub reports: usize,
    pub per_claim: BTreeMap<String, ClaimCounts>,
    pub in_scope_fails: usize,
    pub entry_errors: Vec<EntryError>,
}

impl Summary {
    /// Zero in-scope fails and every entry built.
    pub fn is_clean(&self) -> bool {
        self.in_scope_fails == 0 && self.entry_errors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusRun {
    pub reports: Vec<VerdictReport>,
    pub summary: Summary,
}

/// Builds, analyzes and checks one entry against the given claims.
pub fn verify_entry(entry: &CorpusEntry, claims: &[&str], cap: usize) -> Result<Vec<VerdictReport>> {
    let g = build_group_with_cap(&entry.spec, cap)?;
    let a = analyze(g)?;
    claims.iter().map(|id| verify_claim(id, &entry.name, &a)).collect()
}

/// Runs every claim over every entry on a pool of `jobs` threads. Report
/// order follows the manifest and the claim list, whatever the thread count.
pub fn verify_corpus(entries: &[CorpusEntry], claims: &[&str], jobs: usize, cap: usize) -> Result<CorpusRun> {
    for id in claims {
        claim_info(id)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::SpecInvalid(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<VerdictReport>>> =
        pool.install(|| entries.par_iter().map(|e| verify_entry(e, claims, cap)).collect());

    let mut summary = Summary { groups: entries.len(), ..Default::default() };
    for id in claims {
        summary.per_claim.entry(id.to_string()).or_default();
    }
    let mut reports = Vec::new();
    for (entry, res) in entries.iter().zip(results) {
        match res {
            Ok(rs) => reports.extend(rs),
            Err(e) => summary.entry_errors.push(EntryError { group: entry.name.clone(), error: e.to_string() }),
        }
    }
    for r in &reports {
        let c = summary.per_claim.get_mut(&r.claim).expect("claim registered above");
        match r.verdict {
            Verdict::Pass => c.pass += 1,
            Verdict::Fail => c.fail += 1,
            Verdict::NotApplicable => c.not_applicable += 1,
        }
        if r.is_in_scope_fail() {
            c.in_scope_fail += 1;
            summary.in_scope_fails += 1;
        }
    }
    summary.reports = reports.len();
    Ok(CorpusRun { reports, summary })
}
