use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lscsp::io::{instance_to_string, read_instance};
use lscsp::{brute_force_ls, Answer, DEFAULT_ORACLE_BUDGET};
use lscsp_cli::bench::from_csv;
use lscsp_cli::report::RunReport;
use tempfile::TempDir;

fn lscsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lscsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

const OR_FILE: &str = r#"{"relations": {"OR": {"arity": 2, "tuples": ["01", "10", "11"]}}}"#;
const NEQ_FILE: &str = r#"{"relations": {"NEQ": {"arity": 2, "tuples": ["01", "10"]}}}"#;

const HORN_DEMO: &str = r#"{
  "relations": {"AND_IMPL": {"arity": 3, "tuples": ["000", "001", "010", "011", "100", "101", "111"]}},
  "variables": ["a", "b", "c", "d"],
  "constraints": [
    {"rel": "AND_IMPL", "scope": ["a", "b", "c"]},
    {"rel": "AND_IMPL", "scope": ["b", "c", "d"]},
    {"rel": "AND_IMPL", "scope": ["c", "d", "a"]},
    {"rel": "AND_IMPL", "scope": ["d", "a", "b"]}
  ],
  "assignment": {"a": 1, "b": 1, "c": 1, "d": 1},
  "k": 2
}"#;

fn classify_json(file: &str) -> RunReport {
    let o = lscsp(&["classify", file, "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_or_is_w1_hard() {
    let dir = TempDir::new().unwrap();
    let r = classify_json(&write(&dir, "or.json", OR_FILE));
    let v = r.verdict.unwrap();
    assert_eq!(v.ls_class.to_string(), "W1_HARD");
    assert_eq!(v.relations[0].horn_witness.as_ref().unwrap().len(), 2);
}

#[test]
fn classify_neq_is_polynomial() {
    let dir = TempDir::new().unwrap();
    let v = classify_json(&write(&dir, "neq.json", NEQ_FILE)).verdict.unwrap();
    assert_eq!(v.ls_class.to_string(), "P");
    assert!(v.relations[0].width2_affine);
    assert_eq!(v.algorithm.tag(), "width2");
}

#[test]
fn malformed_bitstring_exits_2_with_position() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", "{\"relations\": {\n\"R\": {\"arity\": 2, \"tuples\": [\"011\"]}}}");
    let o = lscsp(&["classify", &f]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(code(&lscsp(&["classify", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&lscsp(&["solve", "/nonexistent/file.json"])), 2);
}

#[test]
fn horn_demo_exit_code_matches_oracle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "horn.json", HORN_DEMO);
    let (inst, _) = read_instance(&f).unwrap();
    let expected = brute_force_ls(&inst, DEFAULT_ORACLE_BUDGET).unwrap().answer;
    let o = lscsp(&["solve", &f, "--json", "--check-oracle", "--deterministic"]);
    assert_eq!(code(&o), if expected == Answer::Yes { 0 } else { 1 });
    let r: RunReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.oracle_agreement, Some(true));
    let d = r.decision.unwrap();
    assert_eq!(d.answer, expected);
    assert_eq!(d.algorithm.tag(), "horn");

    // k = 1 cannot reach a lighter solution, k = 2 can.
    let no = HORN_DEMO.replace("\"k\": 2", "\"k\": 1");
    assert_eq!(code(&lscsp(&["solve", &write(&dir, "no.json", &no)])), 1);
    assert_eq!(expected, Answer::Yes);
}

#[test]
fn wrong_algorithm_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "horn.json", HORN_DEMO);
    let o = lscsp(&["solve", &f, "--algo", "width2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not apply"));
}

#[test]
fn budget_exceeded_has_its_own_message() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "horn.json", HORN_DEMO);
    let o = lscsp(&["solve", &f, "--budget", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("budget exceeded"));
}

#[test]
fn gen_clique_vc_on_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", "3\n0 1\n1 2\n0 2\n");
    let out = path(&dir, "cv.json");
    let o = lscsp(&["gen", "clique-vc", "--graph", &g, "--x", "0", "--t", "3", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (inst, meta) = read_instance(&out).unwrap();
    assert_eq!(inst.num_variables(), 5);
    assert_eq!(inst.k(), 5);
    let meta = meta.unwrap();
    assert_eq!(meta["generator"], "clique-vc");
    assert_eq!(meta["expected_answer"], "YES");

    // The written file is exactly what the instance serializes to.
    assert_eq!(fs::read_to_string(&out).unwrap(), instance_to_string(&inst, Some(meta)));

    let o = lscsp(&["solve", &out, "--check-oracle"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn gen_clique_vc_rejects_even_t() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", "3\n0 1\n1 2\n0 2\n");
    let o = lscsp(&["gen", "clique-vc", "--graph", &g, "--t", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd"));
}

#[test]
fn gen_domset_on_one_edge() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "edge.txt", "2\n0 1\n");
    let out = path(&dir, "ds.json");
    let o = lscsp(&["gen", "domset", "--graph", &g, "--t", "1", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (inst, meta) = read_instance(&out).unwrap();
    assert_eq!(inst.num_variables(), 9);
    assert_eq!(meta.unwrap()["expected_answer"], "YES");
    assert_eq!(code(&lscsp(&["solve", &out, "--check-oracle"])), 0);
}

#[test]
fn gen_w1_and_one_in_three_match_their_metadata() {
    let dir = TempDir::new().unwrap();
    for seed in 0..4u64 {
        let s = seed.to_string();
        for (kind, extra) in [
            ("w1", vec!["--r1", "ONE_IN_THREE", "--r2", "NAND2"]),
            ("w1", vec![]),
            ("one-in-three", vec!["--k", "1", "--scale", "6"]),
            ("one-in-three", vec!["--k", "1", "--scale", "6", "--eliminate-neq"]),
        ] {
            let out = path(&dir, &format!("{kind}{seed}.json"));
            let mut args = vec!["gen", kind, "--vars", "3", "--seed", &s, "--out", &out];
            args.extend(extra.iter().copied());
            let o = lscsp(&args);
            assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
            let (inst, meta) = read_instance(&out).unwrap();
            if extra.contains(&"--eliminate-neq") {
                let f = inst.formula();
                let used: Vec<&str> = f.used_relations().into_iter().map(|id| f.relations[id].name()).collect();
                assert_eq!(used, ["ONE_IN_THREE"]);
            }
            let oracle = brute_force_ls(&inst, 50_000_000).unwrap().answer;
            if let Some(expected) = meta.unwrap()["expected_answer"].as_str() {
                assert_eq!(oracle.to_string(), expected, "{kind} seed {seed}");
            }
        }
    }
}

#[test]
fn gen_reads_relations_file() {
    let dir = TempDir::new().unwrap();
    let rels = write(&dir, "rels.json", r#"{"relations": {"H": {"arity": 3, "tuples": ["000", "010", "100", "111"]}}}"#);
    let g = write(&dir, "p3.txt", "3\n0 1\n1 2\n");
    let out = path(&dir, "ds.json");
    let o = lscsp(&["gen", "domset", "--graph", &g, "--t", "1", "--relations", &rels, "--relation", "H", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (inst, _) = read_instance(&out).unwrap();
    assert_eq!(inst.num_variables(), 23);
    let o = lscsp(&["gen", "domset", "--graph", &g, "--t", "1", "--relation", "NOPE"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bench_csv_round_trips() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "bench.csv");
    let o = lscsp(&["bench", "--suite", "all", "--kmax", "4", "--sizes", "8,10", "--csv", &csv]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let rows = from_csv(&text).unwrap();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.within_bound && r.nodes <= r.bound));
    assert_eq!(lscsp_cli::bench::to_csv(&rows).unwrap(), text);
    let horn: Vec<_> = rows.iter().filter(|r| r.family == "horn-chain" && r.n == 10).collect();
    assert!(horn.windows(2).all(|w| w[0].nodes <= w[1].nodes));
}

#[test]
fn solve_report_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "horn.json", HORN_DEMO);
    let o = lscsp(&["solve", &f, "--json", "--deterministic"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let r: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.to_json() + "\n", text);
    let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let w = r.decision.unwrap().witness.unwrap();
    assert_eq!(w.keys().collect::<Vec<_>>(), ["a", "b", "c", "d"]);
}

#[test]
fn text_output_names_answer_and_algorithm() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "horn.json", HORN_DEMO);
    let o = lscsp(&["solve", &f]);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("answer: YES"));
    assert!(out.contains("algorithm: horn"));
    assert!(out.contains("witness: a="));
    assert!(Path::new(&f).exists());
}
