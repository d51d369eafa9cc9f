use std::process::{Command, Output};

use serde_json::Value;

fn mui(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mui"))
        .args(args)
        .output()
        .expect("run mui")
}

fn stdout(args: &[&str]) -> String {
    let out = mui(args);
    assert!(
        out.status.success(),
        "mui {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn invariants() {
    assert_eq!(stdout(&["invariant", "M", "--s", "2", "--p", "3", "--n", "2"]), "a1*x2 + 2*a2*x1");
    assert_eq!(stdout(&["invariant", "L", "--p", "3", "--n", "1"]), "x1");
    assert_eq!(stdout(&["invariant", "Mset", "--S", "1,2", "--p", "3", "--n", "2"]), "2*a1a2");
    assert_eq!(stdout(&["invariant", "L", "--p", "3", "--n", "2"]), "2*x1^3x2 + x1x2^3");
    assert_eq!(stdout(&["invariant", "dickson", "--r", "0", "--p", "3", "--n", "1"]), "x1^2");
    assert_eq!(stdout(&["invariant", "dickson", "--r", "0", "--p", "2", "--n", "1"]), "x1");
}

#[test]
fn apply() {
    assert_eq!(stdout(&["apply", "b", "a1", "--p", "3", "--n", "2"]), "x1");
    assert_eq!(stdout(&["apply", "P1", "x1", "--p", "3", "--n", "2"]), "x1^3");
    assert_eq!(stdout(&["apply", "P0", "a1a2"]), "a1a2");
    assert_eq!(stdout(&["apply", "P1 b", "2*a1a2"]), "a1*x2^3 + 2*a2*x1^3");
    assert_eq!(stdout(&["apply", "Sq1", "x1", "--p", "2"]), "x1^2");
}

#[test]
fn restrict_and_decompose() {
    assert_eq!(stdout(&["restrict", "a1*x2 - a2*x1", "--form", "0,1"]), "0");
    assert_eq!(stdout(&["restrict", "x1^2", "--form", "0,1", "--n", "2"]), "x1^2");
    let parts = stdout(&["decompose", "x1*a1*x2^3 - x1*a2*x1^3 + x2*a1*x2 - x2*a2*x1"]);
    assert_eq!(parts, "M{1}: x1\nM{2}: x2");
}

#[test]
fn ess_basis_and_closure_agree() {
    let ess: Value = serde_json::from_str(&stdout(&[
        "ess-basis", "--max-degree", "12", "--p", "3", "--n", "2", "--json",
    ]))
    .unwrap();
    let closure: Value =
        serde_json::from_str(&stdout(&["closure", "a1a2", "--max-degree", "12", "--json"])).unwrap();
    let dims = |v: &Value| -> Vec<u64> {
        v["degrees"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| d["dimension"].as_u64().unwrap())
            .collect()
    };
    assert_eq!(dims(&ess), dims(&closure));
    assert_eq!(dims(&ess)[..6], [0, 0, 1, 1, 2, 2]);
}

#[test]
fn errors_are_reported() {
    let out = mui(&["apply", "P1 Q2", "a1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 3"));

    let out = mui(&["apply", "P1", "a1 + a4", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));

    let out = mui(&["invariant", "M", "--s", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = mui(&["verify", "--p", "3", "--n", "2", "--claims", "lemma:unknown"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = mui(&["verify", "--p", "3", "--n", "2", "--max-degree", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("17/17 claims passed"), "{text}");

    let out = mui(&["verify", "--p", "2", "--n", "3", "--max-degree", "15", "--claims", "lemma:p2"]);
    assert_eq!(out.status.code(), Some(0));

    let out = mui(&["verify", "--p", "3", "--n", "9"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource guard"));
}

#[test]
fn verify_json_schema() {
    let out = stdout(&[
        "verify", "--p", "3", "--n", "2", "--max-degree", "12", "--json", "--claims", "lemma:jointAnn,eq:betaMns",
    ]);
    let reports: Value = serde_json::from_str(&out).unwrap();
    let reports = reports.as_array().unwrap();
    let claims: Vec<&str> = reports.iter().map(|r| r["claim"].as_str().unwrap()).collect();
    assert_eq!(claims, ["eq:betaMns", "lemma:jointAnn"]);
    for r in reports {
        for key in ["claim", "p", "n", "degree_bound", "status", "cases", "runtime_ms"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["status"], "pass");
        for case in r["cases"].as_array().unwrap() {
            for key in ["id", "expected", "actual", "pass"] {
                assert!(case.get(key).is_some(), "missing {key}");
            }
        }
    }
    assert_eq!(reports[1]["cases"].as_array().unwrap().len(), 13);
}

#[test]
fn claim_list() {
    let list = stdout(&["verify", "--list"]);
    assert_eq!(list.lines().count(), 18);
    assert!(list.contains("thm:Steenrod"));
}
