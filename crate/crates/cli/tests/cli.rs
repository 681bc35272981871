use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lossy-gossip")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json")
}

#[test]
fn tropical_product_in_all_formats() {
    let p = data("path.txt");
    let p = p.to_str().unwrap();
    let out = run(&["tropmul", "--left", p, "--right", p, "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0,1,3\n1,0,2\n3,2,0\n");
    let v = json(&["tropmul", "--left", p, "--right", p]);
    assert_eq!(v["n"], 3);
    assert_eq!(v["entries"][0][2], "3");
    let out = run(&["tropmul", "--left", p, "--right", p, "--format", "csv"]);
    assert_eq!(stdout(&out), "0,1,3\n1,0,2\n3,2,0\n");
}

#[test]
fn kleene_and_metric_check() {
    let a = data("asym.txt");
    let out = run(&["kleene", "--matrix", a.to_str().unwrap(), "--format", "text"]);
    assert_eq!(stdout(&out), "0,3,1/2\n3,0,2\n1,4,0\n");
    let v = json(&["metric-check", "--matrix", data("path.txt").to_str().unwrap()]);
    assert_eq!(v["is_metric"], false);
}

#[test]
fn group_checks() {
    let v = json(&["tdet", "--matrix", data("tdet.json").to_str().unwrap()]);
    assert_eq!((v["value"].as_str(), v["multiplicity"].as_u64()), (Some("2"), Some(1)));
    let v = json(&["o3-check", "--matrix", data("g3.txt").to_str().unwrap()]);
    assert_eq!(v["prevariety"]["satisfied"], true);
    assert_eq!(v["classification"]["cone"]["kind"], "asymmetric");
    let v = json(&["sl-check", "--n", "3", "--trials", "200", "--seed", "4"]);
    assert_eq!(v["failures"], 0);
}

#[test]
fn detour_graph_realisation() {
    let g = data("six_parameter.json");
    let v = json(&["realize", "--graph", g.to_str().unwrap()]);
    assert_eq!(v["matrix"]["entries"][0][3], "25");
    assert_eq!(v["matrix"]["entries"][3][0], "21");
    assert_eq!(v["kleene_compatible"], true);
    let t = json(&["realize", "--graph", g.to_str().unwrap(), "--transpose"]);
    assert_eq!(t["matrix"]["entries"][3][0], "25");
}

#[test]
fn monoid_enumeration_and_lengths() {
    let out = run(&["gossip-enum", "--n", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("length,count"));
    let counts: Vec<(u64, u64)> = lines
        .map(|l| l.split_once(',').map(|(a, b)| (a.parse().unwrap(), b.parse().unwrap())).unwrap())
        .collect();
    assert_eq!(counts.iter().map(|c| c.1).sum::<u64>(), 189);
    assert_eq!(counts.last().unwrap().0, 4);
    let v = json(&["gossip-enum", "--n", "3", "--state", data("all_known3.txt").to_str().unwrap()]);
    assert_eq!(v["length"], 3);
    let v = json(&["irredundant", "--n", "4"]);
    assert_eq!(v["search"]["length"], 5);
    let v = json(&["irredundant", "--n", "4", "--ladder"]);
    assert_eq!(v["factors"], 10);
    let v = json(&["pessimal", "--n", "5", "--attempts", "1000", "--seed", "2"]);
    assert_eq!(v["length"], 10);
}

#[test]
fn small_fans() {
    let v = json(&["spans", "--n", "3"]);
    assert_eq!(v["spans"], 7);
    let v = json(&["orbits", "--n", "3"]);
    assert_eq!(v["orbits"], 2);
    let v = json(&["fan", "--n", "3"]);
    assert_eq!((v["is_fan"].as_bool(), v["cones"].as_u64()), (Some(true), Some(7)));
    let v = json(&["closure-check", "--n", "3", "--trials", "100", "--seed", "9"]);
    assert_eq!(v["escapes"], 0);
    let v = json(&["core-witness", "--n", "4", "--edges", "0-1,1-2,1-3"]);
    assert_eq!(v["matches"], true);
}

#[test]
fn json_is_identical_across_runs_and_thread_counts() {
    let args = ["closure-check", "--n", "3", "--trials", "200", "--seed", "11"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let many = run(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let a = run(&["pq-check", "--seed", "3", "--attempts", "5000"]);
    let b = run(&["pq-check", "--seed", "3", "--attempts", "5000", "--threads", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["spans", "--n", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["spans"], 1);
    // A memory budget too small to finish is a resource abort.
    let out = run(&["gossip-enum", "--n", "5", "--memory-budget", "800"]);
    assert_eq!(out.status.code(), Some(3));
    // Missing seeds and malformed input are usage errors, not mismatches.
    assert_eq!(run(&["closure-check", "--n", "3", "--trials", "5"]).status.code(), Some(1));
    assert_eq!(run(&["tdet", "--matrix", data("missing.txt").to_str().unwrap()]).status.code(), Some(1));
}
