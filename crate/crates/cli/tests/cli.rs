use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn schur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schur")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn catalog(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/catalog")
        .join(file)
        .to_string_lossy()
        .into_owned()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .map(str::trim)
        .unwrap_or_else(|| panic!("no `{key}` line in\n{text}"))
}

fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("elapsed_us");
            m.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn info_reports_basic_invariants() {
    let o = schur(&["info", "D16"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(line(&s, "order"), "16");
    assert_eq!(line(&s, "|Z(G)|"), "2");

    let s = stdout(&schur(&["info", "item6", "--p", "3"]));
    assert_eq!(line(&s, "order"), "81");
    assert_eq!(line(&s, "|G'|"), "3");
}

#[test]
fn multiplier_of_catalog_groups() {
    let s = stdout(&schur(&["multiplier", "Q8"]));
    assert_eq!(line(&s, "M(G)"), "[]");

    let s = stdout(&schur(&["multiplier", "item1"]));
    assert_eq!(line(&s, "|M(G)|"), "2^10");
    assert_eq!(line(&s, "t"), "5");
    assert_eq!(line(&s, "agrees with"), "kunneth");

    let s = stdout(&schur(&["multiplier", "Z3^2", "--method", "oracle"]));
    assert_eq!(line(&s, "M(G)"), "[3]");
}

#[test]
fn multiplier_of_files() {
    let s = stdout(&schur(&["multiplier", &catalog("E1_p3.pc"), "--cross-check"]));
    assert_eq!(line(&s, "M(G)"), "[3,3]");
    assert!(line(&s, "agrees with").contains("oracle"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z4.grp");
    fs::write(&path, "gens a;\nrels a^4;\n").unwrap();
    let s = stdout(&schur(&["multiplier", path.to_str().unwrap()]));
    assert_eq!(line(&s, "method"), "oracle");
    assert_eq!(line(&s, "M(G)"), "[]");
}

#[test]
fn main_theorem_suite_passes() {
    let o = schur(&["verify-main-theorem", "--primes", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    for item in ["item1", "item11", "item12", "item13", "item14", "item15", "item16"] {
        assert!(
            s.lines()
                .any(|l| l.starts_with("PASS") && l.contains(item) && l.contains("t=5")),
            "{item}"
        );
    }
    assert!(!s.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn empty_bounds_corpus_warns() {
    let o = schur(&["verify-bounds", "--corpus", "empty"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("warning: empty corpus"));
}

#[test]
fn parse_lists_relators() {
    let s = stdout(&schur(&["parse", &catalog("item12.grp")]));
    assert!(s.starts_with("2 generators"));
    assert!(s.contains("3 relators"));
    let s = stdout(&schur(&["parse", &catalog("item16.grp")]));
    assert!(s.starts_with("3 generators"));
    assert!(s.contains("5 relators"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    fs::write(&bad, "gens a,b;\nrels a^").unwrap();
    let o = schur(&["parse", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.grp:2:8"), "{}", stderr(&o));

    assert_eq!(schur(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(schur(&["multiplier", "not-a-group"]).status.code(), Some(2));
    assert_eq!(schur(&["multiplier", "Q8", "--method", "guess"]).status.code(), Some(2));

    // a consistent-looking but inconsistent pc presentation
    let pc = dir.path().join("bad.pc");
    fs::write(
        &pc,
        "pcgroup bad {\n  p = 2; n = 3;\n  pow 1 = g2;\n  comm 2 1 = g3;\n}\n",
    )
    .unwrap();
    let o = schur(&["multiplier", pc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("inconsistent"));

    let o = schur(&["--max-cosets", "10", "info", &catalog("item6_p3.grp")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_reports_are_deterministic() {
    let run = || {
        let o = schur(&["--format", "json", "verify-main-theorem", "--primes", "2"]);
        assert!(o.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        strip_timing(&mut v);
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["summary"]["failed"], 0);
}

#[test]
fn csv_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = schur(&["--format", "csv", "--out", out.to_str().unwrap(), "multiplier", "D8"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let mut rdr = csv::Reader::from_path(&out).unwrap();
    assert!(rdr.headers().unwrap().iter().any(|h| h == "group"));
    assert_eq!(rdr.records().count(), 1);
}

#[test]
fn export_catalog_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let target: PathBuf = dir.path().join("cat");
    let o = schur(&["export-catalog", "--corpus", "3:3", target.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(target.join("manifest.json")).unwrap()).unwrap();
    let records = manifest.as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        let pc = r["pc_file"].as_str().unwrap();
        assert!(target.join(pc).exists(), "{pc}");
    }
}
