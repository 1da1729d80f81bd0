use std::process::{Command, Output};

use coxtwist::poset::import_json;

fn coxtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxtwist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn enumerate_rows() {
    let out = coxtwist(&["enumerate", "--group", "A5:flip", "--set", "iota"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 15);

    let out = coxtwist(&["enumerate", "--group", "A5:flip", "--theta", "id", "--set", "iota"]);
    assert_eq!(stdout(&out).lines().collect::<Vec<_>>(), ["e\trho=0\tlength=0\tell_theta=0\tword=e"]);

    let out = coxtwist(&["enumerate", "--group", "A5:flip", "--set", "inv"]);
    assert_eq!(stdout(&out).lines().count(), 76);

    let out = coxtwist(&["enumerate", "--group", "A3", "--set", "W"]);
    assert_eq!(stdout(&out).lines().count(), 24);
}

#[test]
fn enumerate_truncated_affine() {
    let out = coxtwist(&["enumerate", "--group", "affineA2", "--set", "iota", "--max-rank", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l.starts_with("213\trho=3\t")));
    let out = coxtwist(&["enumerate", "--group", "affineA2", "--set", "iota"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn enumerate_json() {
    let out = coxtwist(&["enumerate", "--group", "A2:flip", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["sexpr"], "e");
    assert_eq!(rows[1]["rho"], 1);
}

#[test]
fn poset_exports() {
    let dot = stdout(&coxtwist(&["poset", "--group", "A5:flip"]));
    assert_eq!(dot.matches("label=").count(), 15);
    let dot = stdout(&coxtwist(&["poset", "--group", "E6:flip"]));
    assert_eq!(dot.matches("label=").count(), 45);
    let dot = stdout(&coxtwist(&["poset", "--group", "A1"]));
    assert_eq!(dot.matches("label=").count(), 1);
    assert!(!dot.contains("->"));

    let json = stdout(&coxtwist(&["poset", "--group", "A5:flip", "--format", "json"]));
    let p = import_json(&json).unwrap();
    assert_eq!(p.len(), 15);
    assert_eq!(p.maximal_elements().len(), 1);
    assert_eq!(code(&coxtwist(&["poset", "--group", "A2", "--set", "W"])), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["poset", "--group", "D5:swap", "--set", "inv", "--format", "json"];
    assert_eq!(coxtwist(&args).stdout, coxtwist(&args).stdout);
}

#[test]
fn graded_check_fails_on_affine_a2() {
    let out = coxtwist(&["check", "graded", "--group", "affineA2", "--max-rank", "3"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("FAIL graded"));
    assert!(text.contains("chain: e < 3 < 213"));
    assert!(text.contains("chain: e < 2 < 21 < 213"));
    let out = coxtwist(&["check", "graded", "--group", "A5:flip"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn passing_checks() {
    for (check, group) in [
        ("factorization", "E6:flip"),
        ("mobius-range", "A4:flip"),
        ("nof", "D4:swap"),
        ("full-dichotomy", "D4:swap"),
        ("lemma-cover", "A5:flip"),
        ("prop51", "A5:flip"),
        ("subword-oracle", "A3:flip"),
        ("maximal", "A6:flip"),
    ] {
        let out = coxtwist(&["check", check, "--group", group]);
        assert_eq!(code(&out), 0, "{check} on {group}: {}", stdout(&out));
        assert!(stdout(&out).starts_with(&format!("PASS {check} {group}")));
    }
}

#[test]
fn failing_checks_carry_witnesses() {
    let out = coxtwist(&["check", "factorization", "--group", "A2:flip", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], false);
    assert_eq!(doc["witness"]["poin_iota"], "1 + 2*t");
    let out = coxtwist(&["check", "prop51", "--group", "A2:flip"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("witness:"));
}

#[test]
fn homology_reports() {
    let out = coxtwist(&["homology", "--group", "affineA2", "--max-rank", "3", "--interval", "3", "213"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("full: no"));
    assert!(text.ends_with("SPHERE(-1)\n"));

    // a full interval of rank gap 2
    let out = coxtwist(&["homology", "--group", "A5:flip", "--interval", "e", "12"]);
    let text = stdout(&out);
    assert!(text.contains("full: yes"), "{text}");
    assert!(text.ends_with("SPHERE(0)\n"));

    let out = coxtwist(&["homology", "--group", "A5:flip", "--interval", "e", "123412", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let expected = if doc["full"] == true { "SPHERE(4)" } else { "ACYCLIC" };
    assert_eq!(doc["classification"], expected);
}

#[test]
fn homology_input_errors() {
    let out = coxtwist(&["homology", "--group", "A5:flip", "--interval", "12", "1"]);
    assert_eq!(code(&out), 3);
    let out = coxtwist(&["homology", "--group", "affineA2", "--max-rank", "2", "--interval", "e", "213"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--max-rank"));
    let out = coxtwist(&["homology", "--group", "A5:flip", "--interval", "e"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&coxtwist(&["enumerate", "--group", "E6:flip", "--budget-elements", "10"])), 2);
    assert_eq!(code(&coxtwist(&["homology", "--group", "A5:flip", "--interval", "e", "123412", "--budget-chains", "3"])), 2);
    assert_eq!(code(&coxtwist(&["enumerate", "--group", "nonsense"])), 3);
    assert_eq!(code(&coxtwist(&["enumerate"])), 3);
    assert_eq!(code(&coxtwist(&["frobnicate"])), 3);
    assert_eq!(code(&coxtwist(&["enumerate", "--group", "A3", "--budget-elements", "0"])), 3);
    assert_eq!(code(&coxtwist(&["--help"])), 0);
}

#[test]
fn group_file_input() {
    let dir = std::env::temp_dir().join(format!("coxtwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a3flip.json");
    std::fs::write(&path, r#"{"size": 3, "m": [[1,3,2],[3,1,3],[2,3,1]], "theta": [2,1,0]}"#).unwrap();
    let out = coxtwist(&["enumerate", "--group", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn series_output() {
    let text = stdout(&coxtwist(&["series", "--group", "A5:flip"]));
    assert!(text.contains("Poin(iota) = 1 + 2*t + 3*t^2 + 3*t^3 + 3*t^4 + 2*t^5 + t^6"));
    let text = stdout(&coxtwist(&["series", "--group", "affineA2", "--max-rank", "3"]));
    assert!(text.contains("(valid up to degree 3)"));
}
