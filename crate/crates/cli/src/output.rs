//! Table, JSON and CSV rendering.

use std::fmt::Write as _;

use serde::Serialize;

use schur_core::fingerprint::Fingerprint;
use schur_core::fp::FpPresentation;
use schur_core::multiplier::MultiplierReport;
use schur_core::verify::VerificationReport;

use crate::{CliError, Format};

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Failed(e.to_string()))
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Failed(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failed(e.to_string()))
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn counts(m: &std::collections::BTreeMap<impl std::fmt::Display, impl std::fmt::Display>) -> String {
    m.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct InfoRow<'a> {
    group: &'a str,
    order: u128,
    exponent: u64,
    derived_order: u128,
    center_order: u128,
    abelianization: String,
}

pub fn info(name: &str, f: &Fingerprint, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Info<'a> {
                group: &'a str,
                fingerprint: &'a Fingerprint,
            }
            json(&Info {
                group: name,
                fingerprint: f,
            })
        }
        Format::Csv => csv_rows(&[InfoRow {
            group: name,
            order: f.order,
            exponent: f.exponent,
            derived_order: f.derived_order,
            center_order: f.center_order,
            abelianization: f.abelian_invariants.to_string(),
        }]),
        Format::Table => Ok(table(&[
            ("group", name.to_string()),
            ("order", f.order.to_string()),
            ("|G'|", f.derived_order.to_string()),
            ("|Z(G)|", f.center_order.to_string()),
            ("exponent", f.exponent.to_string()),
            ("abelianization", f.abelian_invariants.to_string()),
            ("class sizes", counts(&f.class_sizes)),
            ("element orders", counts(&f.element_orders)),
        ])),
    }
}

#[derive(Serialize)]
struct MultiplierRow<'a> {
    group: &'a str,
    p: u32,
    n: usize,
    method: String,
    cross_checks: String,
    invariants: String,
    multiplier_exponent: u32,
    t: u32,
    free_rank: Option<usize>,
}

pub fn multiplier(r: &MultiplierReport, format: Format) -> Result<String, CliError> {
    let checks = r
        .cross_checks
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(&[MultiplierRow {
            group: &r.group,
            p: r.prime,
            n: r.n,
            method: r.method.to_string(),
            cross_checks: checks,
            invariants: r.invariants.to_string(),
            multiplier_exponent: r.multiplier_exponent,
            t: r.t,
            free_rank: r.free_rank,
        }]),
        Format::Table => {
            let mut rows = vec![
                ("group", r.group.clone()),
                ("order", format!("{}^{}", r.prime, r.n)),
                ("method", r.method.to_string()),
                ("M(G)", r.invariants.to_string()),
                ("|M(G)|", format!("{}^{}", r.prime, r.multiplier_exponent)),
                ("t", r.t.to_string()),
            ];
            if let Some(f) = r.free_rank {
                rows.push(("free rank", f.to_string()));
            }
            if !checks.is_empty() {
                rows.push(("agrees with", checks));
            }
            Ok(table(&rows))
        }
    }
}

#[derive(Serialize)]
struct ClaimRow<'a> {
    claim: &'a str,
    group: &'a str,
    p: u32,
    expected: &'a str,
    computed: &'a str,
    methods: String,
    pass: bool,
    elapsed_us: u64,
}

pub fn report(r: &VerificationReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(
            &r.records
                .iter()
                .map(|c| ClaimRow {
                    claim: &c.claim,
                    group: &c.group,
                    p: c.p,
                    expected: &c.expected,
                    computed: &c.computed,
                    methods: c.methods.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
                    pass: c.pass,
                    elapsed_us: c.elapsed_us,
                })
                .collect::<Vec<_>>(),
        ),
        Format::Table => {
            let mut out = String::new();
            let gw = r.records.iter().map(|c| c.group.len()).max().unwrap_or(0);
            let cw = r.records.iter().map(|c| c.claim.len()).max().unwrap_or(0);
            for c in &r.records {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{verdict}  {:<gw$}  {:<cw$}  expected {}  computed {}",
                    c.group, c.claim, c.expected, c.computed
                );
            }
            for w in &r.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            let _ = writeln!(
                out,
                "{}: {} claims, {} passed, {} failed",
                r.suite, r.summary.total, r.summary.passed, r.summary.failed
            );
            Ok(out)
        }
    }
}

pub fn presentation(fp: &FpPresentation, format: Format) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Relator {
        word: String,
        line: usize,
        col: usize,
        source: String,
        length: u64,
    }
    #[derive(Serialize)]
    struct Dump<'a> {
        generators: &'a [String],
        relators: Vec<Relator>,
    }
    let dump = Dump {
        generators: &fp.generators,
        relators: fp
            .relators
            .iter()
            .map(|r| Relator {
                word: r.word.display_with(&fp.generators).to_string(),
                line: r.span.line,
                col: r.span.col,
                source: r.span.text.clone(),
                length: r.word.letter_count(),
            })
            .collect(),
    };
    match format {
        Format::Json => json(&dump),
        Format::Csv => csv_rows(&dump.relators),
        Format::Table => {
            let mut out = format!(
                "{} generators: {}\n{} relators\n",
                fp.generators.len(),
                fp.generators.join(", "),
                dump.relators.len()
            );
            for (k, r) in dump.relators.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  r{}  {}  (line {}, col {}: {})",
                    k + 1,
                    r.word,
                    r.line,
                    r.col,
                    r.source
                );
            }
            Ok(out)
        }
    }
}
