use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn diffset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffset")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn job_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("diffset-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn search_finds_every_cyclic_seven_set() {
    let path = job_file(
        "c7.json",
        r#"{"group": {"cyclic": 7}, "chain": [[]], "params": {"v": 7, "k": 3, "lambda": 1}}"#,
    );
    let out = diffset(&["search", "--spec", path.to_str().unwrap(), "--no-reduction"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["verdict"], "found");
    assert_eq!(doc["finalSets"].as_array().unwrap().len(), 14);
    assert_eq!(doc["finalSets"][0], serde_json::json!([0, 1, 3]));
    assert_eq!(doc["reductionMode"], "none");
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("found:"));
}

#[test]
fn reduced_search_keeps_one_set_per_class() {
    let path = job_file(
        "c7r.json",
        r#"{"group": {"cyclic": 7}, "chain": [[]], "params": {"v": 7, "k": 3, "lambda": "1"},
            "config": {"reduceByEquivalence": true, "parallelWorkers": 2, "emitCandidates": true}}"#,
    );
    let out_file = path.with_extension("out.json");
    let out = diffset(&["search", "--spec", path.to_str().unwrap(), "--out", out_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("found: 1 inequivalent"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    // Translations and the six automorphisms merge all 14 sets.
    assert_eq!(doc["md"], serde_json::json!([1, 1]));
    assert_eq!(doc["perLevel"][1]["rawCount"], 14);
    assert_eq!(doc["perLevel"][1]["symmetryOrder"], 42);
    assert!(doc["perLevel"][1]["candidates"].is_array());
    assert!(doc["timing"]["totalMs"].is_number());
    assert!(doc["perLevel"][1]["elapsedMs"].is_number());
}

#[test]
fn infeasible_parameters_exit_zero_with_empty_results() {
    let path = job_file("inf.json", r#"{"group": {"builtin": "S5"}, "params": {"v": 120, "k": 35, "lambda": 9}}"#);
    let out = diffset(&["search", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["verdict"], "parameter-infeasible");
    assert_eq!(doc["perLevel"], serde_json::json!([]));
    assert_eq!(doc["finalSets"], serde_json::json!([]));
}

#[test]
fn spec_errors_exit_two_and_name_the_field() {
    let cases = [
        (r#"{"group": {"cyclic": 7}, "chain": [[]], "params": {"v": 8, "k": 3, "lambda": 1}}"#, "params.v"),
        (r#"{"group": {"cyclic": 7}, "chain": [[9]], "params": {"v": 7, "k": 3, "lambda": 1}}"#, "chain[0]"),
        (r#"{"group": {"cyclic": 7}, "params": {"v": 7, "k": 3, "lambda": 1}}"#, "chain"),
        (r#"{"group": {"cyclic": 7}, "chain": [[]], "params": {"v": 7, "k": 3, "lambda": 1}, "extra": 1}"#, "extra"),
    ];
    for (i, (body, field)) in cases.iter().enumerate() {
        let path = job_file(&format!("bad{i}.json"), body);
        let out = diffset(&["search", "--spec", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{body}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(field), "{body}: {err}");
    }
    let missing = diffset(&["search", "--spec", "/nonexistent/job.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_three() {
    let path = job_file(
        "budget.json",
        r#"{"group": {"cyclic": 13}, "chain": [[]], "params": {"v": 13, "k": 4, "lambda": 1}}"#,
    );
    let out = diffset(&["search", "--spec", path.to_str().unwrap(), "--node-budget", "5", "--no-reduction"]);
    assert_eq!(out.status.code(), Some(3));
    let doc = json(&out);
    assert_eq!(doc["status"], "budget-exhausted");
    assert_eq!(doc["verdict"], "incomplete");
}

#[test]
fn check_sets_and_functions() {
    let yes = diffset(&["check", "--group", "C7", "--set", "1,2,4", "--params", "7,3,1"]);
    assert_eq!(yes.status.code(), Some(0));
    let doc = json(&yes);
    assert_eq!(doc["equidistributed"], true);
    assert_eq!(doc["matchesExpected"], true);
    assert_eq!(doc["parameters"], serde_json::json!({"v": 7, "k": 3, "lambda": 1}));

    let no = diffset(&["check", "--group", "C7", "--set", "1,2,3", "--params", "7,3,1"]);
    assert_eq!(no.status.code(), Some(1));
    let doc = json(&no);
    assert_eq!(doc["equidistributed"], false);
    let offending: Vec<i64> =
        doc["offending"].as_array().unwrap().iter().map(|o| o["lambda"].as_i64().unwrap()).collect();
    assert_eq!(offending, vec![2, 0, 0, 2]);

    let all = diffset(&["check", "--group", "C7", "--set", "0,1,2,3,4,5,6"]);
    assert_eq!(json(&all)["trivial"], true);

    // On S5/S4 the constant function 7 is equi-distributed with λ = 5·7².
    let f = diffset(&["check", "--group", "S5", "--subgroup", r#"["(1,2,3,4)","(1,2)"]"#, "--function", "7,7,7,7,7"]);
    assert_eq!(f.status.code(), Some(0));
    assert_eq!(json(&f)["parameters"], serde_json::json!({"v": 5, "k": 35, "lambda": 245}));
}

#[test]
fn check_round_trips_search_output() {
    let path = job_file(
        "c11.json",
        r#"{"group": {"cyclic": 11}, "chain": [[]], "params": {"v": 11, "k": 5, "lambda": 2}}"#,
    );
    let doc = json(&diffset(&["search", "--spec", path.to_str().unwrap(), "--no-reduction"]));
    let sets = doc["finalSets"].as_array().unwrap();
    assert_eq!(sets.len(), 22);
    for set in sets {
        let list: Vec<String> = set.as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let out = diffset(&["check", "--group", "C11", "--set", &list.join(","), "--params", "11,5,2"]);
        assert_eq!(out.status.code(), Some(0), "{list:?}");
    }
}

#[test]
fn scheme_on_s5_mod_s4() {
    let out = diffset(&["scheme", "--group", "S5", "--subgroup", r#"["(1,2,3,4)","(1,2)"]"#]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["points"], 5);
    assert_eq!(doc["colors"], 2);
    assert_eq!(doc["relSize"], serde_json::json!([5, 20]));
    assert_eq!(doc["valencies"], serde_json::json!([1, 4]));
}

#[test]
fn automorphism_counts() {
    assert_eq!(json(&diffset(&["auts", "--group", "C7"]))["automorphisms"], 6);
    let s5 = json(&diffset(&["auts", "--group", "S5", "--subgroup", r#"["(1,2,3,4)","(1,2)"]"#]));
    assert_eq!(s5["automorphisms"], 120);
    assert_eq!(s5["subgroups"][0]["automorphismsFixing"], 24);
    assert_eq!(s5["subgroups"][0]["pointSymmetryOrder"], 120);
}

#[test]
fn unknown_group_is_a_spec_error() {
    let out = diffset(&["auts", "--group", "G99"]);
    assert_eq!(out.status.code(), Some(2));
}
