//! End-to-end tests of the binary: exit codes, table/JSON parity, the
//! document schema round-trip, and census resume behavior.

use std::path::Path;
use std::process::{Command, Output};

fn zariski(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zariski"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn components_table_flags_the_pair() {
    let out = zariski(&["components", "A16+A2+A1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("total connected components: 3"));
    assert!(text.contains("candidate arithmetic Zariski pair"));
    assert!(text.contains("\u{039b}[10,4,22]"));
    assert!(text.contains("\u{039b}[6,0,34]"));
}

#[test]
fn components_json_round_trips() {
    let out = zariski(&["components", "A19", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["payload"]["kind"], "components");
    assert_eq!(doc["payload"]["total_components"], 2);
    // No pair for A19: the invariant does not separate the components.
    assert_eq!(doc["payload"]["zariski_candidates"].as_array().unwrap().len(), 0);
    // Round-trip: parse(render(x)) = x.
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, reparsed);
}

#[test]
fn table_and_json_agree_on_totals() {
    let json = zariski(&["components", "A18+A1", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    let total = doc["payload"]["total_components"].as_u64().unwrap();
    let table = zariski(&["components", "A18+A1"]);
    assert!(stdout(&table).contains(&format!("total connected components: {total}")));
}

#[test]
fn rank_gate_exits_two() {
    let out = zariski(&["components", "A1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("rank"));
}

#[test]
fn parse_failure_exits_one() {
    let out = zariski(&["components", "B9+Q"]);
    assert_eq!(out.status.code(), Some(1));
    let out = zariski(&["forms"]);
    assert_eq!(out.status.code(), Some(1));
    let out = zariski(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn forms_by_det_lists_fibers() {
    let out = zariski(&["forms", "--det", "55", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let classes = doc["payload"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    let fibers: Vec<u64> = classes
        .iter()
        .map(|c| c["sl2_fiber"].as_u64().unwrap())
        .collect();
    assert_eq!(fibers, vec![1, 2, 1]);
}

#[test]
fn forms_by_disc_lists_reduced_forms() {
    let out = zariski(&["forms", "--disc", "-55"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("4 classes"));
}

#[test]
fn cm_hilbert_of_minus_four() {
    let out = zariski(&["cm", "--disc", "-4", "--hilbert", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coeffs = doc["payload"]["hilbert"]["coefficients"].as_array().unwrap();
    let coeffs: Vec<&str> = coeffs.iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, vec!["1", "-1728"]);
}

#[test]
fn cm_rejects_non_fundamental() {
    let out = zariski(&["cm", "--disc", "-12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cm_signals_insufficient_precision() {
    let out = zariski(&[
        "cm",
        "--disc",
        "-55",
        "--hilbert",
        "--precision-digits",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("precision-digits"), "guidance expected: {err}");
}

#[test]
fn census_runs_resumes_and_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("types.txt");
    std::fs::write(
        &input,
        "A16+A2+A1\n# a comment line\nA16+A3\nA18+A1\nA15+A4   # trailing comment\nA19\nA10+A9\nA1\n\n",
    )
    .unwrap();
    let outdir = dir.path().join("reports");
    let run = |resume: bool| -> Output {
        let mut args = vec![
            "census",
            "--input",
            input.to_str().unwrap(),
            "--out",
            outdir.to_str().unwrap(),
            "--workers",
            "4",
            "--json",
        ];
        if resume {
            args.push("--resume");
        }
        zariski(&args)
    };

    let first = run(false);
    // The A1 line fails the rank gate, so the run is partial: exit 3.
    assert_eq!(first.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let entries = doc["payload"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    let totals: Vec<Option<u64>> = entries
        .iter()
        .map(|e| e["total_components"].as_u64())
        .collect();
    assert_eq!(
        totals,
        vec![Some(3), Some(2), Some(3), Some(3), Some(2), Some(4), None]
    );
    assert_eq!(entries[6]["status"], "failed");
    for name in ["A16+A2+A1", "A16+A3", "A18+A1", "A15+A4", "A19", "A10+A9"] {
        assert!(outdir.join(format!("{name}.json")).exists(), "{name}");
    }

    // Written documents are valid components reports.
    let body = std::fs::read_to_string(outdir.join("A15+A4.json")).unwrap();
    let report: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(report["payload"]["kind"], "components");
    assert_eq!(report["payload"]["total_components"], 3);

    // Resume skips existing outputs and leaves the files untouched.
    let before = mtimes(&outdir);
    let second = run(true);
    assert_eq!(second.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&second)).unwrap();
    let entries = doc["payload"]["entries"].as_array().unwrap();
    assert_eq!(entries[0]["status"], "skipped");
    assert_eq!(entries[0]["total_components"], 3);
    assert_eq!(entries[1]["status"], "skipped");
    assert_eq!(mtimes(&outdir), before, "resume must not rewrite reports");
}

fn mtimes(dir: &Path) -> Vec<(String, std::time::SystemTime)> {
    let mut out: Vec<(String, std::time::SystemTime)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                e.metadata().unwrap().modified().unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

#[test]
fn empty_census_is_a_success() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.txt");
    std::fs::write(&input, "# nothing here\n").unwrap();
    let out = zariski(&[
        "census",
        "--input",
        input.to_str().unwrap(),
        "--out",
        dir.path().join("r").to_str().unwrap(),
    ]);
    assert!(out.status.success());
}
