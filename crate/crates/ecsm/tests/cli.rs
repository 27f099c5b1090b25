//! Black-box CLI tests: exit codes, output formats, manifests.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ecsm");
const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/table23_golden.csv");

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().expect("spawn ecsm")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn energy_exact_case_prints_six_decimals() {
    let out = run(&["energy", "--mu", "0.5", "--de", "1", "--delta", "2", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-5.000000\n");
}

#[test]
fn energy_h2_matches_table_anchor() {
    let out = run(&["energy", "--mu", "0.5041", "--de", "4.746768", "--delta", "2.993", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - (-13.091031)).abs() < 1e-3);
}

#[test]
fn energy_full_precision_uses_scientific_notation() {
    let out = run(&["energy", "--mu", "0.5", "--de", "1", "--delta", "2", "--n", "0", "--full-precision"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-5.0000000000000000e0\n");
}

#[test]
fn energy_zero_delta_is_usage_error() {
    let out = run(&["energy", "--mu", "0.5", "--de", "1", "--delta", "0", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("screening parameter"), "{err}");
}

#[test]
fn energy_bad_flag_is_usage_error() {
    let out = run(&["energy", "--mu", "abc", "--de", "1", "--delta", "2", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["energy", "--mu", "0.5", "--de", "1", "--delta", "2", "--n", "0", "--variant", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tables_builtin_has_253_rows_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["tables", "--out", "energies.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("energies.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("molecule,n,variant,energy"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 253);
    assert!(rows[0].starts_with("H2,0,table,"));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("energies.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["tool"], "ecsm");
    assert_eq!(manifest["subcommand"], "tables");
    assert_eq!(manifest["outputs"][0], "energies.csv");
    assert!(manifest["inputs"][0]["sha256"].as_str().unwrap().len() == 64);
}

#[test]
fn tables_n_max_zero_has_23_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["tables", "--n-max", "0", "--out", "energies.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("energies.csv")).unwrap();
    assert_eq!(csv.lines().count(), 24);
}

#[test]
fn tables_empty_input_yields_header_only() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.csv"), "name,mu_amu,De,delta\n").unwrap();
    let out = run_in(dir.path(), &["tables", "--input", "empty.csv", "--out", "energies.csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(dir.path().join("energies.csv")).unwrap(),
        "molecule,n,variant,energy\n"
    );
}

#[test]
fn tables_bad_input_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.csv"), "wrong,header\n").unwrap();
    assert_eq!(run_in(dir.path(), &["tables", "--input", "bad.csv"]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), &["tables", "--input", "missing.csv"]).status.code(), Some(2));
}

#[test]
fn validate_golden_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["validate", "--expected", GOLDEN, "--report", "report.json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["total"], 253);
    assert_eq!(report["table_failures"], 0);
    assert_eq!(report["passed"], true);
}

#[test]
fn validate_perturbed_entry_fails_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let golden = std::fs::read_to_string(GOLDEN).unwrap();
    // perturb HF n=0 by 1%
    assert!(golden.contains("HF,0,-3.295488"));
    let perturbed = golden.replacen("HF,0,-3.295488", "HF,0,-3.328443", 1);
    std::fs::write(dir.path().join("perturbed.csv"), perturbed).unwrap();
    let out = run_in(dir.path(), &["validate", "--expected", "perturbed.csv", "--report", "report.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("HF n=0"), "{err}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["table_failures"], 1);
    let failing = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["pass"] == false)
        .unwrap();
    assert_eq!(failing["molecule"], "HF");
}

#[test]
fn validate_bad_schema_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.csv"), "a,b\n1,2\n").unwrap();
    assert_eq!(run_in(dir.path(), &["validate", "--expected", "bad.csv"]).status.code(), Some(2));
    assert_eq!(run_in(dir.path(), &["validate", "--expected", "missing.csv"]).status.code(), Some(2));
}

#[test]
fn figures_unknown_index_is_usage_error() {
    assert_eq!(run(&["figures", "--fig", "9"]).status.code(), Some(2));
    assert_eq!(run(&["figures", "--fig", "0"]).status.code(), Some(2));
}

#[test]
fn compare_h2_report_has_levels() {
    let out = run(&["compare", "--molecule", "H2", "--n-grid", "2000", "--max-levels", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let report = &reports[0];
    assert_eq!(report["molecule"], "H2");
    assert_eq!(report["variant"], "table");
    let levels = report["levels"].as_array().unwrap();
    assert!(!levels.is_empty());
    assert!(levels[0]["e_closed"].is_f64());
    assert!(levels[0]["e_oracle"].is_f64());
}

#[test]
fn compare_unknown_molecule_is_usage_error() {
    let out = run(&["compare", "--molecule", "Xe2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("Xe2"));
}

#[test]
fn compare_nu_variant_records_regime_error() {
    let out = run(&[
        "compare",
        "--molecule",
        "Na2",
        "--variant",
        "nu",
        "--n-grid",
        "2000",
        "--r-max",
        "3000",
        "--max-levels",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let note = reports[0]["note"].as_str().unwrap();
    assert!(note.contains("delta > 2"), "{note}");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["figures", "--fig", "4", "--out", "figs"];
    assert_eq!(run_in(dir.path(), &args).status.code(), Some(0));
    let csv1 = std::fs::read(dir.path().join("figs/fig4.csv")).unwrap();
    let man1 = std::fs::read(dir.path().join("figs/fig4.csv.manifest.json")).unwrap();
    assert_eq!(run_in(dir.path(), &args).status.code(), Some(0));
    assert_eq!(csv1, std::fs::read(dir.path().join("figs/fig4.csv")).unwrap());
    assert_eq!(man1, std::fs::read(dir.path().join("figs/fig4.csv.manifest.json")).unwrap());
}
