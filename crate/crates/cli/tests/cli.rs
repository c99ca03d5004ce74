use serde_json::Value;
use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn unitary_both_agrees() {
    let out = hecke(&["unitary", "--type", "C", "--rank", "2", "--chi", "1/2,1/4", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["unitary"], Value::Bool(true));
    assert_eq!(r["detail"]["agree"], Value::Bool(true));
}

#[test]
fn symmetric_type_a_parameter() {
    let out = hecke(&["unitary", "--type", "A", "--rank", "4", "--chi", "1,0,0,0,-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["group"], "A4");
}

#[test]
fn exit_codes() {
    let not_hermitian = hecke(&["unitary", "--type", "A", "--rank", "2", "--chi", "1,0,0"]);
    assert_eq!(not_hermitian.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&not_hermitian.stderr).unwrap();
    assert_eq!(err["error"], "not_hermitian");
    assert_eq!(hecke(&["unitary", "--type", "C", "--rank", "2", "--chi", "1/0,1"]).status.code(), Some(3));
    assert_eq!(hecke(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(hecke(&["plot", "--type", "A2", "--out", "/dev/null"]).status.code(), Some(2));
    assert_eq!(hecke(&["--help"]).status.code(), Some(0));
}

#[test]
fn strings_rendering() {
    let chi = "0,0,1,1,1,1,2,3,3,4,4,5,1/4,1/4,3/4,5/4,5/4,1/2,1/2,1/2,3/2,3/2,3/2,5/2,5/2,5/2,5/2,7/2";
    let out = hecke(&["strings", "--type", "B", "--rank", "28", "--chi", chi]);
    let r = &records(&out)[0];
    assert_eq!(r["orbit"], "(1,1;2,2,2,2;3,3,3,3;6,6;7,7;;8)");
    assert_eq!(r["nu"], "(5/2;3/4,7/2;0,1/4;0;2;; )");
    assert_eq!(r["unitary"], Value::Bool(false));
    let zero = hecke(&["strings", "--type", "B", "--rank", "2", "--chi", "0,0"]);
    assert_eq!(records(&zero)[0]["orbit"], "(1,1,1,1)");
}

#[test]
fn region_lookups() {
    let r = records(&hecke(&["region", "--group", "F4", "--orbit", "A1+~A1", "--nu", "1/4,1/4"]));
    assert_eq!(r[0]["unitary"], Value::Bool(true));
    let r = records(&hecke(&["region", "--group", "G2", "--nu", "3/10,3/10"]));
    assert_eq!(r[0]["detail"]["matched"], "(2)");
    let r = records(&hecke(&["region", "--group", "G2", "--nu", "3,3"]));
    assert_eq!(r[0]["unitary"], Value::Bool(false));
}

#[test]
fn extended_operator_scalars() {
    let out = hecke(&["unitary", "--type", "C", "--rank", "2", "--chi", "3/5,1/7", "--delta", "+-"]);
    let r = &records(&out)[0];
    let mut scalars: Vec<String> =
        r["detail"]["blocks"].as_array().unwrap().iter().map(|b| b["scalar"].as_str().unwrap().to_string()).collect();
    scalars.sort();
    assert_eq!(scalars, ["-1", "-1/4", "1", "1/4"]);
}

#[test]
fn plot_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("hecke-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.svg"), dir.join("b.svg"));
    let run = |p: &std::path::Path| hecke(&["plot", "--type", "C2", "--grid", "1/4", "--out", p.to_str().unwrap()]);
    let x = run(&a);
    run(&b);
    assert!(!x.stdout.is_empty());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r = &records(&x)[0];
    let pts: Vec<&Value> = r["unitary_points"].as_array().unwrap().iter().collect();
    assert!(pts.contains(&&serde_json::json!(["2", "1"])));
    assert!(pts.contains(&&serde_json::json!(["1/2", "1/2"])));
    assert!(!pts.contains(&&serde_json::json!(["1", "1/4"])));
    let svg = std::fs::read_to_string(&a).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("ν1") && svg.contains("<polygon"));
    std::fs::remove_dir_all(&dir).unwrap();
    let coarse = records(&hecke(&["plot", "--type", "B2", "--grid", "1", "--out", "/dev/null"]));
    assert_eq!(coarse[0]["points"], 10);
}

#[test]
fn verify_table_failure_exits_one() {
    let out = hecke(&["verify-table", "--table", "B4"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out);
    let summary = recs.last().unwrap();
    assert_eq!(summary["failed"], 3);
}

#[test]
fn verify_table_g2_passes() {
    let out = hecke(&["verify-table", "--table", "G2"]);
    assert_eq!(out.status.code(), Some(0));
}
