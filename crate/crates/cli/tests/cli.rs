use std::process::{Command, Output};

use domroots::density::{verify_certificate, WitnessCertificate};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domroots"))
        .args(args)
        .env_remove("DOMROOTS_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn poly_examples() {
    assert_eq!(stdout(&["poly", "--graph6", "A_"]), "x^2 + 2x\n");
    assert_eq!(stdout(&["poly", "--family", "complete:3"]), "x^3 + 3x^2 + 3x\n");
    assert_eq!(stdout(&["poly", "--family", "star:3"]), "x^4 + 4x^3 + 3x^2 + x\n");
    for method in ["brute", "inex", "auto"] {
        assert_eq!(stdout(&["poly", "--graph6", "Dhc", "--method", method]), stdout(&["poly", "--graph6", "Dhc"]));
    }
    assert_eq!(stdout(&["poly", "--graph6", "A_", "--format", "csv"]), "k,d_k\n0,0\n1,2\n2,1\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["poly", "--graph6", "A_", "--format", "json"])).unwrap();
    assert_eq!(json["n"], 2);
    assert_eq!(json["coeffs"], serde_json::json!(["0", "2", "1"]));
}

#[test]
fn large_families_use_closed_forms() {
    let out = stdout(&["poly", "--family", "star:100", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["n"], 101);
}

#[test]
fn roots_examples() {
    let star = stdout(&["roots", "--family", "star:2"]);
    let lines: Vec<&str> = star.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "0 exact");
    assert!(lines[1].starts_with("-0.381966011 "));
    assert!(lines[2].starts_with("-2.618033989 "));
    assert_eq!(stdout(&["roots", "--graph6", "A_"]), "0 exact\n-2 exact\n");
    assert_eq!(stdout(&["roots", "--family", "complete:5"]), "0 exact\n");
    let windowed = stdout(&["roots", "--family", "star:2", "--window", "-1,-1/10"]);
    assert_eq!(windowed.lines().count(), 1);
}

#[test]
fn compose_example() {
    assert_eq!(stdout(&["compose", "--graph6", "A_", "-m", "2"]), "x^4 + 4x^3 + 6x^2 + 4x\n");
    assert_eq!(stdout(&["compose", "--graph6", "A_", "-m", "2"]), stdout(&["poly", "--family", "complete:4"]));
}

#[test]
fn witness_examples() {
    let out = stdout(&["witness", "-z", "-1.5", "-e", "0.05"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["certificate"]["case_tag"], "case-1.1");
    assert_eq!(doc["certificate"]["family"]["name"], "K_2_ell");
    let cert = WitnessCertificate::from_json(&doc["certificate"].to_string()).unwrap();
    assert!(verify_certificate(&cert).all_passed());

    let out = stdout(&["witness", "-z", "0", "-e", "0.1"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["certificate"]["family"]["name"], "exact_K2");
    assert_eq!(doc["certificate"]["enclosure"]["interval"]["lo"], "0/1");

    assert_eq!(code(&["witness", "-z", "1", "-e", "0.1"]), 2);
    let plain = stdout(&["witness", "-z", "-7", "-e", "0.5", "--format", "plain"]);
    assert!(plain.contains("case-2") && plain.contains("K_{1,"));
}

#[test]
fn star_roots_example() {
    let out = stdout(&["star-roots", "8"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k,r_k_lo,r_k_hi,gap,estimate,abs_err"));
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("8,5.30933006"), "{last}");
}

#[test]
fn atlas_outputs() {
    let out = stdout(&["atlas", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("graph6,n,root_lo,root_hi"));
    let rows: Vec<&str> = lines.collect();
    let mut graphs: Vec<&str> = rows.iter().map(|r| r.split(',').next().unwrap()).collect();
    graphs.dedup();
    assert_eq!(graphs.len(), 8);
    assert_eq!(rows.len(), 17);

    let table = stdout(&["atlas", "4", "--report", "table", "--format", "plain"]);
    assert!(table.starts_with("n,root_lo,root_hi,graph6,exhaustive\n1,0.000000000000,0.000000000000,@,true\n"));
    assert!(table.contains("\n2,-2.000000000000,-2.000000000000,A_,true\n"));
    assert!(table.contains("note n=2"));

    let growth = stdout(&["atlas", "9", "--report", "growth"]);
    assert!(growth.lines().last().unwrap().starts_with("9,5.309330065"));

    let audit = stdout(&["atlas", "6", "--report", "audit", "--samples", "200"]);
    assert!(audit.contains("0 mismatches"));
}

#[test]
fn worker_count_does_not_change_output() {
    let one = Command::new(env!("CARGO_BIN_EXE_domroots"))
        .args(["atlas", "5"])
        .env("DOMROOTS_WORKERS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_domroots"))
        .args(["atlas", "5", "--workers", "4"])
        .output()
        .unwrap();
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(code(&["atlas", "3", "--workers", "0"]), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["poly", "--graph6", "A~~"]), 2);
    assert_eq!(code(&["poly", "--family", "wheel:4"]), 2);
    assert_eq!(code(&["poly"]), 2);
    assert_eq!(code(&["atlas", "8"]), 3);
    assert_eq!(code(&["poly", "--family", "complete:30", "--method", "brute"]), 3);
    assert_eq!(
        code(&["witness", "-z", "-1.5", "-e", "0.001", "--max-m", "1", "--max-param", "3"]),
        3
    );
    let err = run(&["poly", "--graph6", "A~~"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("byte"));
}
