use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: &str = r#"{"field": {"kind":"fp","p":5}, "dim": 3, "labels": ["e11","e12","e22"], "unit": ["1","0","1"], "structure": [[0,0,0,"1"], [0,1,1,"1"], [1,2,1,"1"], [2,2,2,"1"]]}"#;

fn pimtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pimtop")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_then_bijection_golden() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ut2.json");
    let f = file.to_str().unwrap();
    let o = pimtop(&["gen", "upper-triangular", "--n", "2", "--field", "fp:5", "-o", f]);
    assert_eq!(code(&o), 0);
    let o = pimtop(&["bijection", f, "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 2);
    let dims: Vec<u64> = pairs.iter().map(|p| p["pim"]["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 2]);
    assert!(pairs.iter().all(|p| p["simple"]["dim"] == 1 && p["pim"]["multiplicity"] == 1));
    assert_eq!(v["seed"], 0);
    assert_eq!(v["tool"], "pimtop");
    assert!(v["input_sha256"]["algebra"].as_str().unwrap().len() == 64);
    assert!(v["checks"].as_object().unwrap().values().all(|b| b == true));
}

#[test]
fn gen_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["ut:3", "mat:2", "cyc:4", "trunc:3", "ut:2*cyc:2"] {
        let o = pimtop(&["gen", kind, "--field", "3"]);
        assert_eq!(code(&o), 0);
        let text = String::from_utf8(o.stdout).unwrap();
        let f = write(dir.path(), "a.json", &text);
        assert_eq!(code(&pimtop(&["validate", &f])), 0, "{kind}");
        let o = pimtop(&["gen", kind, "--field", "3"]);
        assert_eq!(String::from_utf8(o.stdout).unwrap(), text);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", EXAMPLE);
    let o = pimtop(&["bijection", &good, "--field", "q", "--format", "json"]);
    assert_eq!(code(&o), 2);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "UnsupportedField");

    let bad = write(dir.path(), "bad.json", &EXAMPLE.replace("[2,2,2,\"1\"]", "[2,2,2,\"2\"]"));
    assert_eq!(code(&pimtop(&["validate", &bad])), 1);
    assert_eq!(code(&pimtop(&["bijection", &bad])), 2);

    let junk = write(dir.path(), "junk.json", "{\"dim\": 3}");
    assert_eq!(code(&pimtop(&["info", &junk])), 2);
    assert_eq!(code(&pimtop(&["info"])), 2);
    assert_eq!(code(&pimtop(&["no-such-command"])), 2);
    assert_eq!(code(&pimtop(&["validate", &good])), 0);
    assert_eq!(code(&pimtop(&["check", &good])), 0);
}

#[test]
fn deterministic_json() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", EXAMPLE);
    for cmd in ["info", "radical", "decompose", "comp-series", "simples", "pims", "bijection", "check"] {
        let a = pimtop(&[cmd, &good, "--format", "json", "--seed", "7"]);
        let b = pimtop(&[cmd, &good, "--format", "json", "--seed", "7"]);
        assert_eq!(code(&a), 0, "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert_eq!(json_out(&a)["seed"], 7);
    }
}

#[test]
fn certificates_replay_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.json", EXAMPLE);
    for cmd in ["decompose", "comp-series", "simples", "pims", "radical"] {
        let o = pimtop(&[cmd, &good, "--format", "json"]);
        let report = write(dir.path(), "r.json", &String::from_utf8(o.stdout).unwrap());
        let v = pimtop(&["verify-cert", &report, "--format", "json"]);
        assert_eq!(code(&v), 0, "{cmd}: {}", String::from_utf8_lossy(&v.stdout));
        assert!(json_out(&v)["verified"].as_u64().unwrap() > 0);
    }
    // a composition factor claimed simple but replaced by a two-dimensional module
    let o = pimtop(&["comp-series", &good, "--format", "json"]);
    let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
    v["factors"][0]["module"] = serde_json::json!({
        "dim": 2,
        "action": [[["1","0"],["0","1"]], [["0","0"],["0","0"]], [["0","0"],["0","0"]]]
    });
    let report = write(dir.path(), "tampered.json", &v.to_string());
    let o = pimtop(&["verify-cert", &report, "--format", "json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_out(&o)["rejected"].as_array().unwrap().len(), 1);
}

#[test]
fn module_file_input() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "alg.json", EXAMPLE);
    // P2 = span{e12, e22}
    let module = r#"{"algebra": "alg.json", "dim": 2, "action": [[["1","0"],["0","0"]], [["0","1"],["0","0"]], [["0","0"],["0","1"]]]}"#;
    let m = write(dir.path(), "p2.json", module);
    let o = pimtop(&["comp-series", "--module", &m, "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    assert_eq!(v["length"], 2);
    assert!(v["input_sha256"]["module"].is_string());
    let o = pimtop(&["decompose", "--module", &m, "--format", "json"]);
    assert_eq!(json_out(&o)["summands"].as_array().unwrap().len(), 1);

    let broken = write(dir.path(), "broken.json", &module.replace("[[\"0\",\"1\"],[\"0\",\"0\"]]", "[[\"0\",\"0\"],[\"1\",\"0\"]]"));
    assert_eq!(code(&pimtop(&["decompose", "--module", &broken])), 2);
}

#[test]
fn table_output() {
    let o = pimtop(&["bijection", "--example", "ut:2", "--field", "5"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("radical dimension 1, nilpotency index 2"));
    assert!(!text.contains("FAIL"));
}
