use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tamearr::commands::load_arrangement;
use tamearr_core::certify::{verify_certificate, Certifier, RuleId};
use tamearr_core::{Budget, PrimeField};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tamearr")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn exit_codes() {
    let b3 = corpus("boolean3.json");
    let b3 = b3.to_str().unwrap();
    assert_eq!(code(&run(&["free", b3])), 0);
    assert_eq!(code(&run(&["free", "/nonexistent.json"])), 1);
    assert_eq!(code(&run(&["--field", "Fp:8", "free", b3])), 1);
    assert_eq!(code(&run(&["--mode", "exact", "--field", "Fp:7", "free", b3])), 1);
    assert_eq!(code(&run(&["--hyperplane", "9", "restrict", b3])), 1);
    assert_eq!(code(&run(&["ziegler", b3])), 1);
    let slow = corpus("braidlike4.json");
    let o = run(&["--budget-ms", "1", "sequences", slow.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn reports_are_byte_stable_and_carry_the_field() {
    let f = corpus("x3_nonfree.json");
    let f = f.to_str().unwrap();
    let a = run(&["--json", "free", f]);
    let b = run(&["--json", "free", f]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["field"], "Q");
    assert_eq!(v["status"], "decided");
    assert_eq!(v["result"]["free"], false);
    let fast = json(&run(&["--json", "--mode", "fast", "free", f]));
    assert_eq!(fast["field"], "Fp:32003");
}

#[test]
fn hyperplane_by_form_and_chaining() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z.json");
    let f = corpus("ex163.json");
    let o = run(&["--hyperplane", "1,1,1,0,0", "--out", out.to_str().unwrap(), "ziegler", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = json(&run(&["--json", "free", out.to_str().unwrap()]));
    assert_eq!(v["result"]["exponents"], serde_json::json!([1, 1, 2, 2]));
    assert_eq!(code(&run(&["--hyperplane", "1,2,3,0,0", "ziegler", f.to_str().unwrap()])), 1);
}

#[test]
fn certificates_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let f = corpus("ex162_cone.json");
    assert_eq!(code(&run(&["--out", out.to_str().unwrap(), "certify", f.to_str().unwrap()])), 0);
    let v = json(&run(&["--json", "verify", out.to_str().unwrap()]));
    assert_eq!(v["result"]["ok"], true);
    // tampering with a recorded multiplicity is caught
    let mut report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    report["result"]["certificate"]["premises"][0]["target"]["hyperplanes"][0] = serde_json::json!([1, 2, 3]);
    fs::write(&out, report.to_string()).unwrap();
    let v = json(&run(&["--json", "verify", out.to_str().unwrap()]));
    assert_eq!(v["result"]["ok"], false);
}

#[test]
fn cache_hits_keep_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let f = corpus("multi_generic3.json");
    let args = ["--json", "--cache", cache.to_str().unwrap(), "tame", f.to_str().unwrap()];
    let first = run(&args);
    assert!(fs::read_dir(&cache).unwrap().next().is_some());
    assert_eq!(first.stdout, run(&args).stdout);
    // damage every entry; the result is recomputed, not trusted
    for sub in fs::read_dir(&cache).unwrap() {
        for e in fs::read_dir(sub.unwrap().path()).unwrap() {
            let p = e.unwrap().path();
            let raw = fs::read_to_string(&p).unwrap().replace("true", "false");
            fs::write(&p, raw).unwrap();
        }
    }
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn corpus_runner_edge_cases() {
    let empty = tempfile::tempdir().unwrap();
    let o = run(&["--json", "corpus", empty.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["instances"], serde_json::json!([]));

    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus("boolean3.json"), dir.path().join("a.json")).unwrap();
    fs::write(dir.path().join("b.json"), "{\"dim\": 2, \"hyperplanes\": [[1, 0], [2, 0]]}").unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let o = run(&["--json", "corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let inst = v["instances"].as_array().unwrap();
    assert_eq!(inst.len(), 2);
    assert!(inst[0]["input_error"].is_null());
    assert!(inst[0]["rows"].as_array().unwrap().iter().all(|r| r["outcome"] != "fail"));
    assert!(inst[1]["input_error"].is_string());
}

#[test]
fn generic_addition_of_a_hyperplane() {
    let a = load_arrangement(&corpus("braidlike4_h1.json")).unwrap();
    let k = PrimeField::new(32003).unwrap();
    let b = Budget::unlimited();
    let mut c = Certifier::new(&k, &b);
    let h = a.len() - 1;
    let free = c.certify_free(&a.minus_delta(h).0).unwrap().unwrap();
    let cert = c.apply_rule(RuleId::GenericAdd, &a, Some(h), vec![free.clone()]).unwrap();
    assert_eq!(cert.evidence.generic, Some(true));
    assert!(verify_certificate(&cert, &k, &b).unwrap().ok);
    // a non-generic hyperplane is refused
    assert!(c.apply_rule(RuleId::GenericAdd, &a, Some(0), vec![free]).is_err());
}
