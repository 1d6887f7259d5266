use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bethe-schubert"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn stderr_error(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stderr);
    let line = text.lines().find(|l| l.starts_with('{')).expect("error object");
    serde_json::from_str(line).unwrap()
}

fn schema(name: &str) -> Value {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// The result schema with its `input` reference to the problem schema
/// resolved in place.
fn result_validator() -> jsonschema::Validator {
    let mut problem = schema("problem.schema.json");
    let obj = problem.as_object_mut().unwrap();
    obj.remove("$schema");
    obj.remove("$id");
    let defs = obj.remove("$defs").unwrap();
    let mut result = schema("result.schema.json");
    for (k, v) in defs.as_object().unwrap() {
        result["$defs"][k] = v.clone();
    }
    assert_eq!(result["properties"]["input"]["$ref"], "problem.schema.json");
    result["properties"]["input"] = problem;
    jsonschema::validator_for(&result).expect("schema compiles")
}

#[test]
fn missing_file_exits_2() {
    let o = run(&["spectrum", "--file", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_error(&o)["error"], "io");
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{ \"N\": 2, \"lambda\": [1,").unwrap();
    let o = run(&["fiber", "--file", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_error(&o)["error"], "invalid-input");
}

#[test]
fn repeated_points_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("rep.json");
    std::fs::write(&p, r#"{"N": 2, "Lambda": [[1], [1]], "lambda": [1, 1], "points": ["1", "1"]}"#).unwrap();
    let o = run(&["spectrum", "--file", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_exits_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn identities_small() {
    let o = run(&["verify", "--suite", "identities", "--N", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["passed"], true);
}

#[test]
fn weyl_one_point_fiber() {
    let f = data("weyl_one_point.json");
    let o = run(&["fiber", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = stdout_json(&o);
    let fiber = doc["fiber"].as_array().unwrap();
    assert_eq!(fiber.len(), 1);
    assert_eq!(fiber[0]["multiplicity"], 2);
    assert_eq!(doc["space_dim"], 2);
    assert!(result_validator().is_valid(&doc));
}

#[test]
fn tensor_fiber_is_transversal() {
    let f = data("tensor_three_points.json");
    let o = run(&["fiber", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc = stdout_json(&o);
    let mults: Vec<u64> = doc["fiber"].as_array().unwrap().iter().map(|p| p["multiplicity"].as_u64().unwrap()).collect();
    assert_eq!(mults, vec![1, 1]);
}

#[test]
fn documents_validate() {
    let v = result_validator();
    let problem = jsonschema::validator_for(&schema("problem.schema.json")).unwrap();
    for name in ["tensor_three_points.json", "weyl_double_root.json", "weyl_one_point.json", "gl3_vector_triple.json"] {
        let f = data(name);
        let input: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
        assert!(problem.is_valid(&input), "{name}");
        for cmd in ["spectrum", "fiber"] {
            let o = run(&[cmd, "--file", f.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{cmd} {name}");
            let doc = stdout_json(&o);
            let errs: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
            assert!(errs.is_empty(), "{cmd} {name}: {errs:?}");
            let mut broken = doc.clone();
            broken["spectrum"][0]["multiplicity"] = Value::from(0);
            assert!(!v.is_valid(&broken));
        }
    }
}

#[test]
fn deterministic_output() {
    let f = data("weyl_one_point.json");
    let a = run(&["fiber", "--file", f.to_str().unwrap()]);
    let b = run(&["fiber", "--file", f.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn results_dir_caches() {
    let dir = tempfile::tempdir().unwrap();
    let f = data("tensor_three_points.json");
    let args = ["spectrum", "--file", f.to_str().unwrap(), "--results-dir", dir.path().to_str().unwrap()];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let name = entries[0].as_ref().unwrap().file_name().into_string().unwrap();
    assert_eq!(name.len(), 64 + ".json".len());
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn characters_subcommand() {
    let o = run(&["characters", "--N", "2", "--lambda", "2,1", "--max-degree", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = stdout_json(&o);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["shift"], 1);
}

#[test]
fn normalize_subcommand() {
    let f = data("fuchsian_three_points.json");
    let o = run(&["normalize", "--file", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = stdout_json(&o);
    assert_eq!(doc["empty"], false);
    assert_eq!(doc["problem"]["lambda"], serde_json::json!([2, 1]));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let f = data("weyl_double_root.json");
    let o = run(&["spectrum", "--file", f.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["command"], "spectrum");
}
