//! Verification suites producing machine-readable reports.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{build_main_theorem_named, certify, item_constraint, CatalogEntry, EntryKind, MAIN_THEOREM_NAMES};
use crate::fp::DEFAULT_MAX_COSETS;
use crate::multiplier::{
    derived_bound_check, jones_inequality_check, multiplier, Method, MultiplierOptions, MultiplierReport,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub group: String,
    pub p: u32,
    pub expected: String,
    pub computed: String,
    pub methods: Vec<Method>,
    pub pass: bool,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub primes: Vec<u32>,
    /// Largest order cross-checked by the bar-resolution oracle.
    pub oracle_max_order: usize,
    pub max_cosets: usize,
    pub corpus: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            primes: vec![2, 3, 5],
            oracle_max_order: 32,
            max_cosets: DEFAULT_MAX_COSETS,
            corpus: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub tool_version: String,
    pub config: SuiteConfig,
    pub records: Vec<ClaimRecord>,
    pub summary: Summary,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    fn new(suite: &str, config: SuiteConfig, records: Vec<ClaimRecord>, warnings: Vec<String>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        VerificationReport {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
            warnings,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// The report with every timing set to zero, for comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.elapsed_us = 0;
        }
        r
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

struct Recorder<'a> {
    group: String,
    p: u32,
    out: &'a mut Vec<ClaimRecord>,
}

impl Recorder<'_> {
    fn push(&mut self, claim: &str, expected: impl ToString, computed: impl ToString, pass: bool, start: Instant) {
        self.push_with(claim, expected, computed, pass, Vec::new(), start);
    }

    fn push_with(
        &mut self,
        claim: &str,
        expected: impl ToString,
        computed: impl ToString,
        pass: bool,
        methods: Vec<Method>,
        start: Instant,
    ) {
        self.out.push(ClaimRecord {
            claim: claim.to_string(),
            group: self.group.clone(),
            p: self.p,
            expected: expected.to_string(),
            computed: computed.to_string(),
            methods,
            pass,
            elapsed_us: start.elapsed().as_micros() as u64,
        });
    }
}

fn methods_of(r: &MultiplierReport) -> Vec<Method> {
    std::iter::once(r.method)
        .chain(r.cross_checks.iter().copied())
        .collect()
}

fn compute(entry: &CatalogEntry, cfg: &SuiteConfig, rec: &mut Recorder) -> Option<MultiplierReport> {
    let start = Instant::now();
    let opts = MultiplierOptions {
        method: Method::Auto,
        cross_check: true,
        oracle_cap: cfg.oracle_max_order,
    };
    match multiplier(&entry.pc, &opts) {
        Ok(r) => {
            rec.push_with(
                "hopf_rank",
                entry.pc.ngens(),
                r.free_rank.map_or("none".into(), |f| f.to_string()),
                r.free_rank == Some(entry.pc.ngens()),
                methods_of(&r),
                start,
            );
            Some(r)
        }
        Err(e) => {
            rec.push("multiplier", "computed", e, false, start);
            None
        }
    }
}

fn main_theorem_case(name: &str, p: u32, cfg: &SuiteConfig) -> Vec<ClaimRecord> {
    let mut out = Vec::new();
    let start = Instant::now();
    let entry = match build_main_theorem_named(name, p) {
        Ok(e) => e,
        Err(e) => {
            let mut rec = Recorder {
                group: format!("{name}_p{p}"),
                p,
                out: &mut out,
            };
            rec.push("build", "consistent presentation", e, false, start);
            return out;
        }
    };
    let mut rec = Recorder {
        group: entry.label(),
        p,
        out: &mut out,
    };
    rec.push(
        "order",
        format!("{p}^{}", entry.expected_n),
        format!("{p}^{}", entry.pc.ngens()),
        entry.pc.ngens() == entry.expected_n,
        start,
    );
    if entry.fp.is_some() {
        let start = Instant::now();
        match certify(&entry, cfg.max_cosets) {
            Ok(Some(c)) => {
                let computed = format!(
                    "relators hold: {}, generates: {}, cosets: {}, fingerprints match: {}",
                    c.satisfaction.failing_relators.is_empty(),
                    c.satisfaction.generates,
                    c.coset_order.map_or("cap exceeded".into(), |n| n.to_string()),
                    c.fingerprints_match
                );
                rec.push(
                    "presentation",
                    format!("certified, {} cosets", c.pc_order),
                    computed,
                    c.passed(),
                    start,
                );
            }
            Ok(None) => {}
            Err(e) => rec.push("presentation", "certified", e, false, start),
        }
    }
    let start = Instant::now();
    if let Some(r) = compute(&entry, cfg, &mut rec) {
        let green = entry.pc.ngens() * entry.pc.ngens().saturating_sub(1) / 2;
        rec.push_with(
            "t=5",
            format!("|M| = {p}^{}", green.saturating_sub(5)),
            format!("|M| = {p}^{} {}, t = {}", r.multiplier_exponent, r.invariants, r.t),
            r.t == 5,
            methods_of(&r),
            start,
        );
    }
    out
}

/// Every Main-Theorem entry at every listed admissible prime.
pub fn verify_main_theorem(cfg: &SuiteConfig) -> VerificationReport {
    let mut cases = Vec::new();
    for name in MAIN_THEOREM_NAMES {
        let item: u8 = name
            .trim_start_matches("item")
            .trim_end_matches('b')
            .parse()
            .expect("item names");
        let constraint = item_constraint(item).expect("valid item");
        for &p in &cfg.primes {
            if constraint.admits(p) {
                cases.push((item, name, p));
            }
        }
    }
    cases.sort_by_key(|&(item, name, p)| (item, name, p));
    let records = cases
        .par_iter()
        .map(|&(_, name, p)| main_theorem_case(name, p, cfg))
        .collect::<Vec<_>>()
        .concat();
    let mut warnings = Vec::new();
    if cases.is_empty() {
        warnings.push("no item is admissible for the given primes".to_string());
    }
    VerificationReport::new("main-theorem", cfg.clone(), records, warnings)
}

fn bounds_case(entry: &CatalogEntry, cfg: &SuiteConfig, warnings: &mut Vec<String>) -> Vec<ClaimRecord> {
    let mut out = Vec::new();
    let mut rec = Recorder {
        group: entry.label(),
        p: entry.p,
        out: &mut out,
    };
    let Some(r) = compute(entry, cfg, &mut rec) else {
        return out;
    };
    let n = entry.pc.ngens();
    let start = Instant::now();
    rec.push_with("green", "t >= 0", r.t, true, methods_of(&r), start);
    if let Some(t) = entry.expected_t {
        let claim = if entry.kind == EntryKind::Control {
            "control"
        } else {
            "expected_t"
        };
        rec.push(claim, t, r.t, r.t == t, start);
    }
    if entry.kind == EntryKind::Control {
        rec.push("control_not_t5", "t != 5", r.t, r.t != 5, start);
    }
    if entry.pc.is_abelian() {
        return out;
    }
    let start = Instant::now();
    match derived_bound_check(&entry.pc) {
        Ok(nr) => {
            rec.push(
                "derived_bound",
                format!("log|M| <= {}", nr.bound_exponent),
                nr.multiplier_exponent,
                nr.holds,
                start,
            );
            rec.push(
                "derived_bound_equality",
                "equality iff E1 x elementary abelian",
                format!("equality {}, recognized {}", nr.equality, nr.equality_case_recognized),
                nr.consistent(),
                start,
            );
            if r.t == 5 {
                let k = nr.k;
                let limit = if k >= 3 { 4 } else { 6 };
                if k >= 2 {
                    rec.push(
                        "t5_derived_bound",
                        format!("n <= {limit} for k = {k}"),
                        n,
                        n <= limit,
                        start,
                    );
                }
                rec.push("t5_order_bound", "n <= 7", n, n <= 7, start);
            }
        }
        Err(e) => rec.push("derived_bound", "computed", e, false, start),
    }
    let start = Instant::now();
    match jones_inequality_check(&entry.pc) {
        Ok(j) if j.derived_central => rec.push(
            "jones",
            "lhs <= rhs (abelianized tensor factors)",
            format!("{} <= {}", j.lhs_exponent, j.rhs_exponent),
            j.holds,
            start,
        ),
        Ok(j) => warnings.push(format!(
            "{}: G' is not central, so the Jones-type inequality is not asserted (lhs {}, rhs {}, {})",
            entry.label(),
            j.lhs_exponent,
            j.rhs_exponent,
            if j.holds { "holds" } else { "fails" }
        )),
        Err(e) => rec.push("jones", "computed", e, false, start),
    }
    out
}

/// Green, derived-subgroup and Jones bounds plus the structural consequences of
/// `t = 5` over the given corpus.
pub fn verify_bounds(entries: &[CatalogEntry], cfg: &SuiteConfig) -> VerificationReport {
    let cases: Vec<_> = entries
        .par_iter()
        .map(|e| {
            let mut w = Vec::new();
            (bounds_case(e, cfg, &mut w), w)
        })
        .collect();
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (r, w) in cases {
        records.extend(r);
        warnings.extend(w);
    }
    if entries.is_empty() {
        warnings.push("empty corpus: the suite passes vacuously".to_string());
    }
    VerificationReport::new("bounds", cfg.clone(), records, warnings)
}

/// The `E1(p) x Z_p^r` entries of a corpus.
pub fn e1_family(entries: Vec<CatalogEntry>) -> Vec<CatalogEntry> {
    entries
        .into_iter()
        .filter(|e| e.name.starts_with("E1_p") || e.name == "item2")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{corpus, CorpusSpec};

    #[test]
    fn main_theorem_for_p2() {
        let cfg = SuiteConfig {
            primes: vec![2],
            ..SuiteConfig::default()
        };
        let r = verify_main_theorem(&cfg);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let groups: std::collections::BTreeSet<&str> = r.records.iter().map(|c| c.group.as_str()).collect();
        assert_eq!(groups.len(), 7);
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn empty_and_e1_corpora() {
        let r = verify_bounds(&[], &SuiteConfig::default());
        assert!(r.passed());
        assert_eq!(r.warnings.len(), 1);
        let e1 = e1_family(corpus(&CorpusSpec { primes: vec![(3, 6)] }).unwrap());
        assert!(!e1.is_empty());
        let r = verify_bounds(&e1, &SuiteConfig::default());
        assert!(r.passed());
        let eq: Vec<_> = r
            .records
            .iter()
            .filter(|c| c.claim == "derived_bound_equality")
            .collect();
        assert_eq!(eq.len(), e1.len());
        assert!(eq.iter().all(|c| c.computed == "equality true, recognized true"));
    }

    #[test]
    fn unknown_primes_warn() {
        let cfg = SuiteConfig {
            primes: vec![4],
            ..SuiteConfig::default()
        };
        let r = verify_main_theorem(&cfg);
        assert!(r.records.is_empty());
        assert!(!r.warnings.is_empty());
    }
}
