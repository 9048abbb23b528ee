use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqsurg"))
        .args(args)
        .env_remove("EQSURG_MAX_EXP")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn rp3_lens_report() {
    let v = json(&["lens", "--p", "2", "--q", "1", "--variant", "C"]);
    assert_eq!(v["word"], "(a-b)^-1 | cst");
    assert_eq!(v["matrix_ok"], true);
    assert_eq!(v["fix_rule_applied"], true);
    let knots = v["contact"]["knots"].as_array().unwrap();
    assert_eq!(knots.len(), 1);
    assert_eq!(knots[0]["type"], "1_1");
    assert_eq!(knots[0]["contact"]["coeff"], "-1");
    assert_eq!(v["contact"]["overall_legal"], true);
}

#[test]
fn report_key_order() {
    let out = run(&["lens", "--p", "5", "--q", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = [
        "\"p\"",
        "\"q\"",
        "\"variant\"",
        "\"cf\"",
        "\"palindrome\"",
        "\"word\"",
        "\"matrix_ok\"",
        "\"shape_ok\"",
        "\"diagram\"",
        "\"contact\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["lens", "--p", "4", "--q", "1", "--variant", "C"]), 0);
    assert_eq!(code(&["lens", "--p", "5", "--q", "2", "--variant", "C"]), 2);
    assert_eq!(code(&["lens", "--p", "4", "--q", "2"]), 2);
    assert_eq!(code(&["lens", "--p", "0", "--q", "1"]), 64);
    assert_eq!(
        code(&["lens", "--p", "3", "--q", "1", "--variant", "D"]),
        64
    );
    assert_eq!(code(&["lens", "--p", "3"]), 64);
    assert_eq!(code(&["census", "--max-p", "1"]), 64);
    assert_eq!(code(&["catalog", "bogus"]), 64);
    assert_eq!(code(&["catalog", "typeA"]), 64);
    assert_eq!(code(&["catalog", "typeA", "--p", "4", "--q", "2"]), 2);
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn verify_word() {
    assert_eq!(
        code(&[
            "verify",
            "--word",
            "(a-b)^-1 | cst",
            "--expect",
            "[[-1,0],[2,1]]"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "verify",
            "--word",
            "(a-b)^-1 | cst",
            "--expect",
            "[[1,0],[2,1]]"
        ]),
        1
    );
    assert_eq!(
        code(&[
            "verify",
            "--word",
            "(a-b)^^ | cst",
            "--expect",
            "[[1,0],[2,1]]"
        ]),
        64
    );
    assert_eq!(code(&["verify", "--word", "a^1", "--expect", "[[1,0]"]), 64);
    assert_eq!(code(&["verify"]), 64);
}

#[test]
fn relation_suite() {
    let v = json(&["verify", "--relations"]);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
    let out = Command::new(env!("CARGO_BIN_EXE_eqsurg"))
        .args(["verify", "--relations"])
        .env("EQSURG_MAX_EXP", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let small: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(small["checks"].as_array().unwrap().len() < checks.len());
    let bad = Command::new(env!("CARGO_BIN_EXE_eqsurg"))
        .args(["verify", "--relations"])
        .env("EQSURG_MAX_EXP", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(64));
}

#[test]
fn census_rows() {
    let v = json(&["census", "--max-p", "2"]);
    let rows = v["rows"].as_array().unwrap();
    let ids: Vec<(i64, i64, &str)> = rows
        .iter()
        .map(|r| {
            (
                r["p"].as_i64().unwrap(),
                r["q"].as_i64().unwrap(),
                r["variant"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(ids, vec![(2, 1, "C"), (2, 1, "Cprime")]);
    assert!(rows.iter().all(|r| r["matrix_ok"] == true));

    let v = json(&["census", "--max-p", "5"]);
    let pairs: Vec<(i64, i64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["p"].as_i64().unwrap(), r["q"].as_i64().unwrap()))
        .collect();
    for want in [(3, 2), (4, 1), (4, 3), (5, 4)] {
        assert!(pairs.contains(&want), "{want:?}");
    }
    assert_eq!(v["summary"]["matrix_ok"], v["summary"]["rows"]);
}

#[test]
fn census_is_deterministic_across_thread_counts() {
    let one = run(&["census", "--max-p", "60", "--threads", "1"]);
    let many = run(&["census", "--max-p", "60", "--threads", "4"]);
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn catalogs() {
    let v = json(&["catalog", "s1xs2"]);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries.iter().all(|e| e["matrix_ok"] == true));
    assert_eq!(entries[3]["tightness_hint"], "overtwisted");

    let v = json(&["catalog", "typeA", "--p", "3", "--q", "1"]);
    assert_eq!(v["cf"], serde_json::json!([-3]));
    assert_eq!(v["enumerated"], 2);
    assert_eq!(v["honda_count"], "2");

    let v = json(&["catalog", "rp3"]);
    assert_eq!(v[0]["word"], "(a-b)^-1 | cst");
}

#[test]
fn byte_deterministic_json() {
    for args in [
        &["lens", "--p", "12", "--q", "5", "--variant", "Cprime"][..],
        &["catalog", "s1xs2"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn factor_palindrome_genus_two() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // swaps the two handles
    writeln!(file, "[[0,1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,-1,0]]").unwrap();
    let path = file.path().to_str().unwrap();
    let args = [
        "factor-palindrome",
        "--genus",
        "2",
        "--involution",
        path,
        "--curves",
        "[1,1,0,0];[0,0,1,-1]",
        "--exps",
        "1,-2",
    ];
    let v = json(&args);
    assert_eq!(v["matrix_ok"], true);
    assert_eq!(v["verdict"], "verified on H_1");

    let bad = [
        "factor-palindrome",
        "--genus",
        "2",
        "--involution",
        path,
        "--curves",
        "[1,0,0,0]",
        "--exps",
        "1",
    ];
    assert_eq!(code(&bad), 2);
    let mismatch = [
        "factor-palindrome",
        "--genus",
        "2",
        "--involution",
        path,
        "--curves",
        "[1,1,0,0]",
        "--exps",
        "1,2",
    ];
    assert_eq!(code(&mismatch), 64);
    let missing = [
        "factor-palindrome",
        "--genus",
        "2",
        "--involution",
        "/nonexistent/s.txt",
        "--curves",
        "[1,1,0,0]",
        "--exps",
        "1",
    ];
    assert_eq!(code(&missing), 64);
}

#[test]
fn text_output() {
    let out = run(&["--format", "text", "lens", "--p", "2", "--q", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("word        (a-b)^-1 | cst"));
    assert!(text.contains("1_1"));
}
