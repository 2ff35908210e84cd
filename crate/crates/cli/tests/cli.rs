use std::process::{Command, Output};

use dp5_core::casework::tables::{printed_table, TableCase, TableRow};
use dp5_core::lattice::ClassRecord;
use dp5_core::{Basis, Configuration, DivisorClass};
use serde_json::Value;

fn dp5(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dp5")).args(args).output().expect("dp5 runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = dp5(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("dp5-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn a2_table_csv() {
    let o = dp5(&["tables", "--case", "p4", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(TableCase::P4.header().as_str()));
    assert_eq!(lines.count(), 12);
    assert!(stderr(&o).contains("12 matched"));
}

#[test]
fn table_rows_round_trip_through_json() {
    let v = json(&["tables", "--case", "p4"]);
    let rows: Vec<TableRow> = serde_json::from_value(v["rows"].clone()).unwrap();
    let mut printed = printed_table(TableCase::P4);
    let mut rows_sorted = rows.clone();
    printed.sort();
    rows_sorted.sort();
    assert_eq!(rows_sorted, printed);
}

#[test]
fn h0_text_and_json() {
    let o = dp5(&["--config", "P2", "h0", "--class", "2l-e1-e2-e3-e4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");

    let v = json(&["--config", "P2", "h0", "--class", "2l-e1-e2-e3-e4"]);
    assert_eq!(v["h0"], "3");
    let rec: ClassRecord = serde_json::from_value(v["class"]["standard"].clone()).unwrap();
    let expected = DivisorClass::parse("2l-e1-e2-e3-e4", Basis::Curve, Configuration::P2).unwrap();
    assert_eq!(rec.to_class().unwrap(), expected);
}

#[test]
fn pullback_json_record_is_fractional() {
    let v = json(&["--config", "P4", "pullback", "--class", "e4"]);
    assert_eq!(v["pullback"], "e4 + 2/3 e3 + 1/3 c");
    assert_eq!(v["self_intersection"], "-1/3");
    let rec: ClassRecord = serde_json::from_value(v["pullback_standard"].clone()).unwrap();
    let q = rec.to_q().unwrap();
    assert!(!q.is_integral());
    assert_eq!(q.sq().to_string(), "-1/3");
}

#[test]
fn transport_reaches_four_lines_family() {
    let o = dp5(&["transport", "--scenario", "bidouble_with_conic", "--by", "tau,swap:34"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    for d in ["D1 = 3l-3e1-e2+e3-e4", "D2 = 3l+e1-3e2-e3-e4", "D3 = 3l-e1+e2-3e3-e4"] {
        assert!(out.contains(d), "{out}");
    }
}

#[test]
fn decompose_anticanonical() {
    let o = dp5(&["decompose", "--class", "3l-e1-e2-e3-e4", "--parts", "nef"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("5 splitting(s)"));
}

#[test]
fn verify_passes() {
    let o = dp5(&["verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn bundled_scenarios_listed_and_runnable() {
    let out = stdout(&dp5(&["scenarios"]));
    let names: Vec<&str> = out.lines().collect();
    assert!(names.contains(&"general_half_conic_branch"));
    for name in names.iter().filter(|n| !n.starts_with("bidouble") && !n.starts_with("table")) {
        let o = dp5(&["cover", "--scenario", name]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dp5(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dp5(&["h0", "--class", "l", "--bogus"]).status.code(), Some(2));
    assert_eq!(dp5(&["--config", "P9", "h0", "--class", "l"]).status.code(), Some(2));
}

#[test]
fn bad_literal_exits_3() {
    let o = dp5(&["h0", "--class", "2x-e7"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_scenario_reports_position() {
    let p = temp_file("malformed.json", "{\n  \"kind\": \"double_cover\",\n  \"name\": 5\n}\n");
    let o = dp5(&["cover", "--scenario", p.to_str().unwrap()]);
    let _ = std::fs::remove_file(&p);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn wrong_expectation_exits_1() {
    let body = r#"{"kind": "double_cover", "name": "wrong", "m_dot_k": 1, "m_sq": -1, "expected": {"chi": 7}}"#;
    let p = temp_file("wrong.json", body);
    let o = dp5(&["cover", "--scenario", p.to_str().unwrap()]);
    let _ = std::fs::remove_file(&p);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}
