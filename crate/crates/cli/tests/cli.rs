use std::process::{Command, Output};

use qdt_core::dtinv::DTRecord;

fn qdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdt")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qdt(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn dt_column(text: &str) -> Vec<String> {
    text.lines().skip(1).map(|l| l.split_whitespace().nth(2).unwrap().to_string()).collect()
}

#[test]
fn dt_table_m2() {
    assert_eq!(dt_column(&stdout(&["dt", "--m", "2", "--n-max", "6"])), ["1", "1", "1", "2", "5", "13"]);
}

#[test]
fn dt_table_m1() {
    assert_eq!(dt_column(&stdout(&["dt", "--m", "1", "--n-max", "3"])), ["1", "0", "0"]);
}

#[test]
fn quantized_m2_n4() {
    let text = stdout(&["dt", "--m", "2", "--n", "4", "--quantized"]);
    assert!(text.lines().nth(1).unwrap().contains("q^4+q^6"), "{text}");
    let csv = stdout(&["dt", "--m", "2", "--n", "4", "--quantized", "--format", "csv"]);
    assert_eq!(csv, "m,n,dt,dt_poly,formula,series\n2,4,2,4:1;6:1,true,true\n");
}

#[test]
fn full_routes_agree() {
    let csv = stdout(&["dt", "--m-max", "3", "--n-max", "6", "--full", "--quantized", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("m,n,dt,dt_poly,formula,series,classes"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 18);
    assert!(rows.iter().all(|r| r.ends_with("true,true,true")));
}

#[test]
fn json_round_trip() {
    let text = stdout(&["dt", "--m", "2", "--n-max", "5", "--quantized", "--full", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let records: Vec<DTRecord> =
        value.as_array().unwrap().iter().map(|v| DTRecord::from_json(v).unwrap()).collect();
    assert_eq!(records.len(), 5);
    assert_eq!(records[3].dt, 2.into());
    assert_eq!(records[3].dt_poly.as_ref().unwrap().to_compact_string(), "q^4+q^6");
    let again: Vec<_> = records.iter().map(DTRecord::to_json).collect();
    assert_eq!(serde_json::Value::from(again), value);
    assert!(value[0]["dt"].is_string());
}

#[test]
fn series_examples() {
    assert_eq!(
        stdout(&["series", "F", "--m", "2", "--numeric", "--order", "6"]),
        "F(t) = 1 + t + 2*t^2 + 5*t^3 + 14*t^4 + 42*t^5 + O(t^6)\n"
    );
    assert_eq!(stdout(&["series", "F", "--m", "2", "--order", "3"]), "F(q,t) = 1 + t + (1+q)*t^2 + O(t^3)\n");
    assert_eq!(stdout(&["series", "H", "--m", "2", "--order", "2"]), "H(q,t) = 1 + (1/(1-q^-1))*t + O(t^2)\n");
    let csv = stdout(&["series", "H", "--m", "2", "--order", "2", "--format", "csv"]);
    assert_eq!(csv, "degree,coefficient\n0,1\n1,1/(1-q^-1)\n");
}

#[test]
fn necklaces_and_higgs() {
    let text = stdout(&["necklaces", "--m", "2", "--n", "4"]);
    assert!(text.ends_with("classes: 8\ndt: 2\n"), "{text}");
    let text = stdout(&["higgs", "--m", "2", "--n", "4", "--d", "1"]);
    assert_eq!(text, "(1,0,0,0)\n(1,1,0,-1)\nsequences: 2\ndt: 2\n");
    let json = stdout(&["higgs", "--m", "2", "--n", "2", "--d", "1", "--format", "json"]);
    assert_eq!(json, "{\"count\":\"1\",\"d\":1,\"dt\":\"1\",\"m\":2,\"n\":2,\"sequences\":[[1,0]]}\n");
    assert!(qdt(&["higgs", "--m", "3", "--n", "3", "--d", "-1"]).status.success());
}

#[test]
fn verify_single_check() {
    let out = qdt(&["verify", "--check", "divisibility", "--m", "3", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS divisibility"), "{text}");
}

#[test]
fn verify_fast() {
    let text = stdout(&["verify", "--fast"]);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 14, "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "--check", "no-such-check"][..],
        &["dt", "--m", "2"],
        &["dt", "--m", "0", "--n", "1"],
        &["dt", "--m", "2", "--m-max", "3", "--n", "1"],
        &["series", "H", "--m", "2", "--numeric"],
        &["frobnicate"],
    ] {
        assert_eq!(qdt(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn thread_cap() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qdt"))
            .args(["dt", "--m-max", "2", "--n-max", "6", "--full"])
            .env("QDT_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(one.stdout, run("4").stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let args = ["dt", "--m-max", "3", "--n-max", "6", "--quantized", "--full", "--format", "json"];
    assert_eq!(qdt(&args).stdout, qdt(&args).stdout);
    let verify = ["verify", "--fast", "--format", "json"];
    assert_eq!(qdt(&verify).stdout, qdt(&verify).stdout);
}
