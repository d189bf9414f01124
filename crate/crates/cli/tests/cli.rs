use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_smalldoubling"))
        .args(args)
        .env("SMALLDOUBLING_WORKERS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn certificate(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["certificate"].clone()
}

fn corpus(name: &str) -> String {
    format!("{}/../core/corpora/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn construct_five() {
    let out = run(&["construct", "--k", "5"], "");
    assert_eq!(out.status.code(), Some(0));
    let c = certificate(&out);
    assert_eq!(c["witness"]["square_size"], json!(15));
    assert_eq!(c["verdict"], json!("exact"));
    assert_eq!(c["version"], json!("1"));
}

#[test]
fn classify_interval_is_branch_one_and_validates() {
    let set: Vec<i64> = (0..=10).collect();
    let out = run(&["classify", "--mode", "3k3"], &json!({"set": set}).to_string());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(certificate(&out)["verdict"], json!("i"));

    let back = run(&["validate"], &String::from_utf8(out.stdout.clone()).unwrap());
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(serde_json::from_slice::<Value>(&back.stdout).unwrap()["valid"], json!(true));

    let mut bad: Value = serde_json::from_slice(&out.stdout).unwrap();
    bad["certificate"]["witness"]["witness"]["progression"]["positions"][3] = json!(4);
    let back = run(&["validate"], &bad.to_string());
    assert_eq!(back.status.code(), Some(1));
}

#[test]
fn ck_mode_needs_c() {
    let out = run(&["classify", "--mode", "ck"], "[0, 1, 2]");
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["classify", "--mode", "ck", "--c", "2"], "[0, 1, 2]");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(certificate(&out)["input"]["mode"], json!("ck:2"));
}

#[test]
fn verify_shipped_bs12_triples() {
    let out = run(&["verify", "--theorem", "P5_forms", &corpus("c6_bs12_triples.json")], "");
    assert_eq!(out.status.code(), Some(0));
    let c = certificate(&out);
    assert_eq!(c["verdict"], json!("verified"));
    assert_eq!(c["witness"]["corpus_size"], json!(936));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let out = run(&["square"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");

    let out = run(&["frobnicate"], "");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8(out.stderr).unwrap().trim_end().lines().count(), 1);

    let out = run(&["verify", "--theorem", "T9_9", &corpus("small_z.json")], "");
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "--theorem", "T1_1"], &json!({"version": "7"}).to_string());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_hit_is_undecided() {
    let corpus = json!({"k": 2, "balls": [{"group": {"family": "free", "rank": 2}, "radius": 3, "cap": 10}]});
    let out = run(&["verify", "--theorem", "T1_5_i"], &corpus.to_string());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(certificate(&out)["verdict"], json!("undecided"));
}

#[test]
fn square_and_match_in_heisenberg() {
    let input = json!({"group": {"family": "heisenberg"}, "set": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]});
    let out = run(&["square"], &input.to_string());
    assert_eq!(out.status.code(), Some(0));
    let c = certificate(&out);
    assert_eq!(c["witness"]["doubling"]["square_size"], json!(7));
    assert_eq!(c["order"], json!("lexicographic(a, b, c)"));

    let out = run(&["match"], &input.to_string());
    assert_eq!(out.status.code(), Some(0));
    let back = run(&["validate"], &String::from_utf8(out.stdout).unwrap());
    assert_eq!(back.status.code(), Some(0));
}

#[test]
fn laws_are_seeded_and_reproducible() {
    let input = json!({"group": {"family": "bs12"}}).to_string();
    let args = ["laws", "--law", "metabelian", "--radius", "4", "--samples", "300", "--seed", "5"];
    let a = run(&args, &input);
    let b = run(&args, &input);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(certificate(&a), certificate(&b));
    let c = certificate(&a);
    assert_eq!(c["evidence_level"], json!("sampled"));
    assert_eq!(c["seed"], json!(5));
    assert_eq!(c["witness"]["samples_checked"], json!(300));

    let free = json!({"group": {"family": "free", "rank": 2}}).to_string();
    let out = run(&["laws", "--law", "metabelian", "--radius", "4"], &free);
    assert_eq!(certificate(&out)["verdict"], json!("violated"));
}

#[test]
fn enumerate_streams_json_lines_independent_of_workers() {
    let task = json!({"ball": {"group": {"family": "lattice", "rank": 1}, "radius": 5}, "k": 3, "bound": {"alpha": 2, "beta": -1}});
    let one = run(&["enumerate", "--parallel", "1"], &task.to_string());
    let two = run(&["enumerate", "--parallel", "2"], &task.to_string());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let lines: Vec<Value> = String::from_utf8(one.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // 3-term progressions in {-5..5}: 9 with step 1, 7 with 2, 5 with 3, 3 with 4, 1 with 5
    assert_eq!(lines.len(), 25);
    assert!(lines.iter().all(|l| l["square_size"] == json!(5)));

    let out = run(&["enumerate", &corpus("small_z.json")], "");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_output_is_byte_identical_apart_from_runtime() {
    let path = corpus("small_heisenberg.json");
    let a = run(&["verify", "--theorem", "P5_forms", &path], "");
    let b = run(&["verify", "--theorem", "P5_forms", "--parallel", "1", &path], "");
    assert_eq!(certificate(&a).to_string(), certificate(&b).to_string());
    let back = run(&["validate"], &String::from_utf8(a.stdout).unwrap());
    assert_eq!(back.status.code(), Some(0));
}
