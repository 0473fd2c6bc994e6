use std::process::{Command, Output};

fn quartic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = quartic(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn graphs_csv() {
    let out = stdout(&["graphs", "--max-n", "14"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,g_n,c_n,t_n");
    assert_eq!(lines[1], "6,15,15,15");
    assert_eq!(lines[9], "14,3068088823800,3067975310400,2879997120000");
    assert_eq!(lines.len(), 10);
    assert!(!out.contains('\r') && out.ends_with('\n'));
}

#[test]
fn graphs_below_six_is_empty() {
    assert_eq!(stdout(&["graphs", "--max-n", "5"]), "n,g_n,c_n,t_n\n");
}

#[test]
fn json_matches_csv() {
    let csv = stdout(&["simple-maps", "--max-n", "15"]);
    let json = stdout(&["simple-maps", "--max-n", "15", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["name"], "rooted simple 4-regular maps");
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    assert_eq!(value["columns"], serde_json::json!(header));
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(value["rows"], serde_json::json!(rows));
    assert!(csv.contains("\n10,29,29\n") && csv.contains("\n15,13036,16066\n"));
}

#[test]
fn maps3c_entries() {
    let out = stdout(&["maps3c", "--max-degree", "7"]);
    assert!(out.starts_with("k,l,t_kl\n"));
    assert!(out.contains("\n2,2,2\n"));
    assert!(out.contains("\n4,3,56\n"));
    assert!(out.contains("\n6,0,1\n"));
}

#[test]
fn deterministic_output() {
    assert_eq!(
        stdout(&["maps3c", "--max-degree", "8"]),
        stdout(&["maps3c", "--max-degree", "8"])
    );
}

#[test]
fn profile_goes_to_stderr() {
    let out = quartic(&["graphs", "--max-n", "6", "--profile"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,g_n,c_n,t_n\n6,15,15,15\n"
    );
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("graph networks"));
}

#[test]
fn insufficient_slack_reports_stage() {
    let out = quartic(&["maps3c", "--max-degree", "8", "--trunc-slack", "1"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("3-connected core") && err.contains("precision exhausted"),
        "{err}"
    );
}

#[test]
fn verify_passes() {
    let out = stdout(&["verify", "--max-edges", "5"]);
    assert!(
        out.lines()
            .filter(|l| !l.ends_with("failed"))
            .all(|l| l.starts_with("PASS ")),
        "{out}"
    );
    assert!(out.contains("labelled 4-regular planar graphs, n = 8"));
    assert!(out.ends_with("0 failed\n"));
}
