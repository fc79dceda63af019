use std::fs;
use std::process::{Command, Output};

fn inoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inoc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn wof_on_k4_prints_four_thirds() {
    let out = inoc(&["wof", "--complete", "4", "--C", "1", "--L", "1", "--F", "1", "--model", "absolute"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "4/3\n");
}

#[test]
fn poa_on_star() {
    let out = inoc(&["poa", "--star", "8", "--C", "13/32", "--L", "1"]);
    assert_eq!(stdout(&out), "101/41\n");
}

#[test]
fn star_closed_form_reports_unique_fne() {
    let v = json(&inoc(&["closed-form", "--star", "8", "--C", "13/32", "--L", "1", "--F", "1/8"]));
    assert_eq!(v["unique_fne"], true);
    assert_eq!(v["friendship_equilibria"][0]["cost"]["exact"], "41/32");
    assert_eq!(v["friendship_equilibria"].as_array().unwrap().len(), 1);
}

#[test]
fn dynamics_trace_on_small_star() {
    let v = json(&inoc(&[
        "dynamics", "--star", "4", "--C", "1", "--L", "2", "--F", "0", "--init", "all-insecure", "--schedule",
        "round-robin",
    ]));
    assert_eq!(v["changes"], 1);
    assert_eq!(v["converged"], true);
    assert_eq!(v["events"][0]["node"], 0);
    assert_eq!(v["final"], "1000");
    for key in ["instance", "schedule", "events", "final", "converged", "passes", "changes"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn enum_and_check() {
    let v = json(&inoc(&["enum", "--complete", "4", "--C", "1", "--L", "1", "--F", "1"]));
    assert_eq!(v["wof"]["exact"], "4/3");
    assert_eq!(v["equilibria"].as_array().unwrap().len(), 6);

    let v = json(&inoc(&["check", "--star", "3", "--C", "1", "--L", "2", "--F", "1/2", "--init", "bits:100"]));
    assert_eq!(v["equilibrium"]["stable"], true);
    assert_eq!(v["characterization"], true);
}

#[test]
fn cost_report() {
    let v = json(&inoc(&["cost", "--complete", "2", "--C", "3/4", "--L", "1", "--init", "bits:10"]));
    assert_eq!(v["costs"]["social"], "5/4");
    assert_eq!(v["costs"]["actual"][0], "3/4");
}

#[test]
fn gen_then_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.txt");
    let p = path.to_str().unwrap();
    let out = inoc(&["gen", "--kleinberg", "4,1,2", "--seed", "42", "--out", p]);
    assert!(out.status.success());
    let first = fs::read_to_string(&path).unwrap();
    inoc(&["gen", "--kleinberg", "4,1,2", "--seed", "42", "--out", p]);
    assert_eq!(fs::read_to_string(&path).unwrap(), first);
    let v = json(&inoc(&["cost", "--graph", p, "--C", "1", "--L", "4"]));
    assert_eq!(v["instance"]["n"], 16);
}

#[test]
fn experiment_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let csv = dir.path().join("rows.csv");
    fs::write(
        &cfg,
        r#"{"kind":"wof_exact","graph":{"generator":"complete","n":4},"C":"1","L":"1",
            "F_grid":["0","1"],"models":["absolute"]}"#,
    )
    .unwrap();
    let out = inoc(&["experiment", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("experiment,trial,seed,side,q,alpha,n,C,L,F,model"));
    assert!(lines[1].ends_with(",1,1.33333333333"));
    assert!(lines[2].ends_with(",1.33333333333,1.33333333333"));
}

#[test]
fn exit_codes() {
    let usage = inoc(&["wof", "--complete", "4", "--C", "1", "--L", "1", "--frobnicate"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());
    assert_eq!(inoc(&["wof", "--complete", "4", "--C", "1/2", "--L", "1", "--model", "loyal"]).status.code(), Some(2));
    assert_eq!(inoc(&["wof", "--complete", "4", "--C", "2", "--L", "1"]).status.code(), Some(3));
    assert_eq!(inoc(&["wof", "--cycle", "30", "--C", "1", "--L", "4"]).status.code(), Some(4));
    assert_eq!(inoc(&["enum", "--cycle", "12", "--C", "1", "--L", "4", "--cap", "10"]).status.code(), Some(4));
    assert_eq!(inoc(&["cost", "--graph", "/nonexistent/graph.txt", "--C", "1", "--L", "4"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"kind":"sweep_F","graph":{"generator":"star","n":5},"C":"1","L":"2","extra":true}"#).unwrap();
    assert_eq!(inoc(&["experiment", "--config", cfg.to_str().unwrap()]).status.code(), Some(3));
}
