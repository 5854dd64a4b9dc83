//! End-to-end tests of the command-line surface: file parsing, exit
//! codes, and the bit-exact output contracts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bnsynth"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bnsynth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn fig1_model() -> PathBuf {
    write_temp(
        "fig1.json",
        r#"{
            "nodes": ["x1", "x2", "x3"],
            "functions": {
                "x1": {"clauses": [[{"var": "x2", "sign": "-"}]]},
                "x2": {"clauses": [[{"var": "x1", "sign": "-"}]]},
                "x3": {"clauses": [[{"var": "x1", "sign": "-"}, {"var": "x2", "sign": "+"}]]}
            }
        }"#,
    )
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn reach_exit_codes_follow_the_examples() {
    let model = fig1_model();
    let yes = bin().args(["reach"]).arg(&model).args(["000", "111"]).output().unwrap();
    assert_eq!(code(&yes), 0, "000 ->* 111 must hold");
    assert_eq!(stdout(&yes).trim(), "reachable");

    let no = bin().args(["reach"]).arg(&model).args(["010", "100"]).output().unwrap();
    assert_eq!(code(&no), 1, "010 ->* 100 must not hold");
    assert_eq!(stdout(&no).trim(), "unreachable");

    let oracle = bin().args(["reach", "--oracle"]).arg(&model).args(["110", "000"]).output().unwrap();
    assert_eq!(code(&oracle), 0);
}

#[test]
fn attractors_render_hypercube_strings() {
    let model = fig1_model();
    let out = bin().arg("attractors").arg(&model).arg("--oracle").output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "011\n100\n");
}

#[test]
fn synthesize_counts_and_enumerates() {
    let problem = write_temp(
        "toggle.json",
        r#"{
            "nodes": ["a", "b"],
            "edges": [
                {"from": "a", "to": "b", "sign": "+"},
                {"from": "b", "to": "a", "sign": "+"}
            ],
            "observations": {"hi": {"a": 1, "b": 1}, "lo": {"a": 0, "b": 0}},
            "constraints": {"fixpoint": ["hi", "lo"]}
        }"#,
    );
    let count = bin().arg("synthesize").arg(&problem).arg("--count").output().unwrap();
    assert_eq!(code(&count), 0);
    assert_eq!(stdout(&count).trim(), "1");

    let list = bin().arg("synthesize").arg(&problem).args(["--witness", "--sorted"]).output().unwrap();
    assert_eq!(code(&list), 0);
    let line: serde_json::Value = serde_json::from_str(stdout(&list).trim()).unwrap();
    assert_eq!(line["functions"]["a"]["clauses"][0][0]["var"], "b");
    assert_eq!(line["witness"]["hi"], "11");
    assert_eq!(line["witness"]["lo"], "00");

    // Unsatisfiable variant exits 1.
    let unsat = write_temp(
        "unsat.json",
        r#"{
            "nodes": ["a"],
            "edges": [],
            "observations": {"p": {"a": 1}, "q": {"a": 0}},
            "constraints": {"fixpoint": ["p", "q"]}
        }"#,
    );
    let out = bin().arg("synthesize").arg(&unsat).arg("--count").output().unwrap();
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn synthesize_sorted_output_is_stable_across_jobs() {
    let problem = write_temp(
        "free.json",
        r#"{
            "nodes": ["a", "b"],
            "edges": [
                {"from": "a", "to": "b", "sign": "+"},
                {"from": "b", "to": "a", "sign": "-"}
            ],
            "observations": {"p": {"a": 1}},
            "constraints": {}
        }"#,
    );
    let one = bin().arg("synthesize").arg(&problem).args(["--sorted", "--jobs", "1"]).output().unwrap();
    let four = bin().arg("synthesize").arg(&problem).args(["--sorted", "--jobs", "4"]).output().unwrap();
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(code(&one), 0);
    // 9 compatible networks, no dynamical constraints.
    assert_eq!(stdout(&one).lines().count(), 9);
}

#[test]
fn check_validates_model_against_problem() {
    let problem = write_temp(
        "check-problem.json",
        r#"{
            "nodes": ["a", "b"],
            "edges": [
                {"from": "a", "to": "b", "sign": "+"},
                {"from": "b", "to": "a", "sign": "+"}
            ],
            "observations": {"hi": {"a": 1, "b": 1}, "lo": {"a": 0, "b": 0}},
            "constraints": {"fixpoint": ["hi", "lo"]}
        }"#,
    );
    let good = write_temp(
        "check-good.json",
        r#"{
            "nodes": ["a", "b"],
            "functions": {
                "a": {"clauses": [[{"var": "b", "sign": "+"}]]},
                "b": {"clauses": [[{"var": "a", "sign": "+"}]]}
            }
        }"#,
    );
    let out = bin().arg("check").arg(&problem).arg(&good).output().unwrap();
    assert_eq!(code(&out), 0);
    let witness: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(witness["hi"], "11");

    let bad = write_temp(
        "check-bad.json",
        r#"{
            "nodes": ["a", "b"],
            "functions": {
                "a": {"const": 1},
                "b": {"clauses": [[{"var": "a", "sign": "+"}]]}
            }
        }"#,
    );
    let out = bin().arg("check").arg(&problem).arg(&bad).output().unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn validation_errors_exit_2_with_diagnostics() {
    let bad = write_temp(
        "bad-obs.json",
        r#"{
            "nodes": ["a"],
            "edges": [],
            "observations": {"p": [["a", 0], ["a", 1]]}
        }"#,
    );
    let out = bin().arg("synthesize").arg(&bad).arg("--count").output().unwrap();
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("contradictory_observation"), "stderr: {err}");

    let missing = bin().arg("synthesize").arg("no-such-file.json").arg("--count").output().unwrap();
    assert_eq!(code(&missing), 2);
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let args = ["gen", "--nodes", "10", "--max-indegree", "3", "--seed", "7"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));

    let path = write_temp("generated.json", &stdout(&a));
    let out = bin().arg("synthesize").arg(&path).arg("--count").output().unwrap();
    assert_eq!(code(&out), 0, "empty constraints: all compatible networks");

    // With the diff2 property the file carries the constraint skeleton.
    let diff = bin().args(["gen", "--nodes", "8", "--max-indegree", "3", "--seed", "5", "--property", "diff2"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&diff)).unwrap();
    assert_eq!(v["constraints"]["reach"].as_array().unwrap().len(), 4);
    assert_eq!(v["constraints"]["nonreach"].as_array().unwrap().len(), 1);
    assert_eq!(v["constraints"]["fixpoint"].as_array().unwrap().len(), 3);
    assert_eq!(v["options"]["distinct"].as_array().unwrap().len(), 1);
}

#[test]
fn bench_reports_json_with_status() {
    let out = bin()
        .args(["bench", "--nodes", "12", "--max-indegree", "4", "--seed", "3", "--constraints", "pr,nr,fp", "--max-clauses", "2", "--budget-secs", "60"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let status = report["status"].as_str().unwrap();
    assert!(["sat", "unsat", "timeout"].contains(&status));
    assert!(report["wall_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn show_renders_functions() {
    let model = fig1_model();
    let out = bin().arg("show").arg(&model).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "x1 := !x2\nx2 := !x1\nx3 := (!x1 & x2)\n");
}
