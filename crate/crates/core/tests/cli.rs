use std::process::{Command, Output};

use serde_json::Value;

fn quiverit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverit")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json", "-"];
    all.extend_from_slice(args);
    let out = quiverit(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    (out.status.code().unwrap(), v)
}

#[test]
fn phi_of_b_simples() {
    let (code, v) = report(&["phi", "exB.alg", "-m", "S1+S2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["phi"], 1);
    assert_eq!(v["result"]["status"], "OrbitCycle");
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn reports_are_deterministic() {
    let args = ["--seed", "7", "--json", "-", "additivity", "exB.alg", "--pairs", "20"];
    let a = quiverit(&args);
    let b = quiverit(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn exit_codes() {
    assert_eq!(quiverit(&["info", "exA.alg"]).status.code(), Some(0));
    assert_eq!(quiverit(&["info", "no-such-algebra.alg"]).status.code(), Some(3));
    assert_eq!(quiverit(&["phi", "exB.alg", "-m", "S7"]).status.code(), Some(3));
    assert_eq!(quiverit(&["no-such-command"]).status.code(), Some(3));
    // the H4 forms disagree on this gluing at the default budget
    assert_eq!(quiverit(&["check-h", "exC.glue"]).status.code(), Some(2));
}

#[test]
fn opposite_flag_swaps_syzygies() {
    // over B^op the simples still have Ω(S_i) = S1 ⊕ S2
    let (code, v) = report(&["--op", "phi", "exB.alg", "-m", "S1+S2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["phi"], 1);
}

#[test]
fn json_file_output() {
    let dir = std::env::temp_dir().join(format!("quiverit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gldim.json");
    let out = quiverit(&["--json", path.to_str().unwrap(), "gldim", "a2.alg"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "gldim");
    std::fs::remove_dir_all(&dir).unwrap();
}
