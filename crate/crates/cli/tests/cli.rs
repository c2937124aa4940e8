use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const UNSAT: &str = "p cnf 3 8\n1 2 3 0\n1 2 -3 0\n1 -2 3 0\n1 -2 -3 0\n-1 2 3 0\n-1 2 -3 0\n-1 -2 3 0\n-1 -2 -3 0\n";

fn trilin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trilin"))
        .args(args)
        .env_remove("TRILIN_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn tlg_compute_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let k4e = write(dir.path(), "k4e.txt", "0 1\n0 2\n1 2\n1 3\n2 3\n");
    let o = trilin(&["tlg", "compute", &k4e]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["graph"]["n"], 5);
    assert_eq!(j["graph"]["edges"].as_array().unwrap().len(), 6);
    assert_eq!(j["edges"].as_array().unwrap().len(), 5);

    let p3 = write(dir.path(), "p3.txt", "0 1\n1 2\n");
    let j = json(&trilin(&["tlg", "compute", &p3]));
    assert_eq!(j["graph"]["n"], 2);
    assert!(j["graph"]["edges"].as_array().unwrap().is_empty());

    let dot = stdout(&trilin(&["tlg", "compute", &k4e, "--format", "dot"]));
    assert!(dot.starts_with("graph \"T\" {"));
}

#[test]
fn missing_files_and_bad_usage() {
    let o = trilin(&["tlg", "compute", "/nonexistent/graph.txt"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/graph.txt"));
    assert_eq!(code(&trilin(&["gadget", "build", "wheel", "3"])), 2);
    assert_eq!(code(&trilin(&["gadget", "build", "nonsense"])), 2);
    assert_eq!(code(&trilin(&["frobnicate"])), 2);
}

#[test]
fn gadget_build_kinds() {
    let j = json(&trilin(&["gadget", "build", "sun", "7"]));
    assert_eq!(j["n"], 14);
    assert_eq!(j["kind"], "sun");
    let j = json(&trilin(&["gadget", "build", "appendix-clause"]));
    assert_eq!(j["n"], 63);
    let j = json(&trilin(&["gadget", "build", "cluster", "1", "16"]));
    assert_eq!(j["sub_gadgets"].as_object().unwrap().len(), 3 + 2 * 17);
}

#[test]
fn preimage_solve_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let s7 = write(dir.path(), "s7.txt", &stdout(&trilin(&["gadget", "build", "sun", "7", "--format", "edgelist"])));
    let o = trilin(&["preimage", "solve", &s7]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["classes"], 2);
    let w = write(dir.path(), "w.json", &j["preimages"][0].to_string());
    let o = trilin(&["preimage", "verify", &w]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "VALID"));

    let mut bad = j["preimages"][0].clone();
    bad["map"][0][2] = bad["map"][1][2].clone();
    bad["map"][1][2] = j["preimages"][0]["map"][0][2].clone();
    let b = write(dir.path(), "bad.json", &bad.to_string());
    let o = trilin(&["preimage", "verify", &b]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "INVALID"));

    let claw = write(dir.path(), "claw.txt", "0 1\n0 2\n0 3\n1 2\n");
    let o = trilin(&["preimage", "solve", &claw]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["status"], "NOT_TLG");

    let o = trilin(&["preimage", "solve", &s7, "--node-budget", "5"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["status"], "UNKNOWN");
}

#[test]
fn template_solve_on_a_blueprint() {
    let dir = tempfile::tempdir().unwrap();
    let wire = write(dir.path(), "wire.json", &stdout(&trilin(&["gadget", "build", "wire", "2"])));
    let o = trilin(&["preimage", "solve", "--templates", &wire]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["assignments"].as_array().unwrap().len(), 2);
}

#[test]
fn decide_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let unsat = write(dir.path(), "unsat.cnf", UNSAT);
    let o = trilin(&["decide", &unsat]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["status"], "UNSAT");

    let sat = write(dir.path(), "sat.cnf", "p cnf 3 1\n1 2 3 0\n");
    let wf = dir.path().join("w.json");
    let o = trilin(&["decide", &sat, "--enforced-k", "16", "--witness-out", wf.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["status"], "SAT");
    assert_eq!(j["assignment"], "001");
    let o = trilin(&["preimage", "verify", wf.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "VALID");

    assert_eq!(code(&trilin(&["decide", &sat, "--node-budget", "1"])), 3);
    assert_eq!(code(&trilin(&["witness", &sat, "000", "--enforced-k", "16"])), 1);
    let o = trilin(&["witness", &sat, "-1 2 3", "--enforced-k", "16"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["map"].is_array());
}

#[test]
fn outputs_do_not_depend_on_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "p cnf 4 2\n1 -2 3 0\n-1 2 4 0\n");
    let a = stdout(&trilin(&["decide", &cnf, "--enforced-k", "16"]));
    let b = stdout(&trilin(&["decide", &cnf, "--enforced-k", "16", "--workers", "4"]));
    assert_eq!(a, b);
    let r1 = stdout(&trilin(&["reduce", &cnf]));
    let r2 = stdout(&trilin(&["reduce", &cnf, "--workers", "3"]));
    assert_eq!(r1, r2);
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "trilin.toml", "format = \"edgelist\"\nenforced_k = 16\n");
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_trilin"))
            .args(args)
            .env("TRILIN_CONFIG", &cfg)
            .output()
            .unwrap()
    };
    assert!(stdout(&run(&["gadget", "build", "bowtie"])).starts_with("# vertices 5"));
    assert!(stdout(&run(&["gadget", "build", "bowtie", "--format", "json"])).starts_with('{'));
    let j: Value = serde_json::from_str(&stdout(&run(&["gadget", "build", "large-variable", "--format", "json"]))).unwrap();
    assert_eq!(j["sub_gadgets"]["S"]["k"], 16);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let o = trilin(&["gadget", "build", "bowtie", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert!(fs::read_to_string(out).unwrap().contains("\"n\":5"));
}

#[test]
fn lemma_battery_exit_codes() {
    let o = trilin(&["check", "lemmas", "--enforced-k", "16"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("9 passed, 0 failed, 0 unknown"));

    let o = trilin(&["check", "lemmas", "--enforced-k", "16", "--node-budget", "50"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("UNKNOWN"));

    let dir = tempfile::tempdir().unwrap();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    for e in fs::read_dir(&data).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    let p = dir.path().join("clause_preimage_2.json");
    let text = fs::read_to_string(&p).unwrap().replacen("[", "[ ", 1);
    fs::write(&p, text).unwrap();
    let o = trilin(&["check", "lemmas", "--enforced-k", "16", "--appendix-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("integrity"));
}
