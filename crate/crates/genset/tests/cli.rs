//! End-to-end tests of the `genset` binary: exit codes, file formats,
//! determinism, and conformance of every JSON report to the shipped schemas.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_genset"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn load_schema(name: &str) -> Value {
    let path = schema_dir().join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file readable"))
        .expect("schema file is JSON")
}

/// Minimal JSON Schema checker covering the subset the shipped schemas use:
/// type, required, properties, items, enum, const, additionalProperties,
/// and file-local $ref.
fn validate(value: &Value, schema: &Value, path: &str) -> Result<(), String> {
    let obj = schema.as_object().ok_or("schema must be an object")?;
    if let Some(reference) = obj.get("$ref").and_then(Value::as_str) {
        let resolved = load_schema(reference);
        return validate(value, &resolved, path);
    }
    if let Some(expected) = obj.get("const") {
        if value != expected {
            return Err(format!("{path}: expected const {expected}, got {value}"));
        }
    }
    if let Some(options) = obj.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in enum {options:?}"));
        }
    }
    if let Some(ty) = obj.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: bad type spec")),
        };
        let matches = names.iter().any(|name| match *name {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !matches {
            return Err(format!("{path}: {value} does not match type {names:?}"));
        }
    }
    if let Some(required) = obj.get("required").and_then(Value::as_array) {
        let map = value.as_object().ok_or(format!("{path}: expected object"))?;
        for key in required.iter().filter_map(Value::as_str) {
            if !map.contains_key(key) {
                return Err(format!("{path}: missing required field `{key}`"));
            }
        }
    }
    if let Some(props) = obj.get("properties").and_then(Value::as_object) {
        if let Some(map) = value.as_object() {
            for (key, sub) in map {
                match props.get(key) {
                    Some(subschema) => validate(sub, subschema, &format!("{path}.{key}"))?,
                    None => {
                        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
                            return Err(format!("{path}: unexpected field `{key}`"));
                        }
                    }
                }
            }
        }
    }
    if let Some(items) = obj.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, sub) in arr.iter().enumerate() {
                validate(sub, items, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn assert_schema(value: &Value, schema_name: &str) {
    let schema = load_schema(schema_name);
    if let Err(e) = validate(value, &schema, "$") {
        panic!("schema {schema_name} violated: {e}\nreport: {value}");
    }
}

fn tmpdir() -> tempfile::TempDir {
    tempfile::tempdir().expect("tempdir")
}

#[test]
fn gen_then_verify_round_trips() {
    let dir = tmpdir();
    let path = dir.path().join("f62.fam");
    let out = run(&["gen", "--n", "6", "--k", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_schema(&report, "gen.schema.json");
    assert_eq!(report["canonical_size"], 14);

    let out = run(&["verify", "--k", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "verify.schema.json");
    assert_eq!(report["covered"], 64);
    assert_eq!(report["is_generator"], true);
}

#[test]
fn gen_without_out_writes_family_to_stdout() {
    let out = run(&["gen", "--n", "4", "--k", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n=4\n"));
    assert_eq!(text.lines().count(), 7); // header + 6 members
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("canonical_size=6"));
}

#[test]
fn gen_rejects_k_above_n_with_exit_2() {
    let out = run(&["gen", "--n", "3", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_missing_member_exits_1_with_witness() {
    let dir = tmpdir();
    let path = dir.path().join("broken.fam");
    // F_{4,2} without {1}
    std::fs::write(&path, "n=4\n2\n1,2\n3\n4\n3,4\n").unwrap();
    let out = run(&["verify", "--k", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_schema(&report, "verify.schema.json");
    assert_eq!(report["uncovered_witness"], "1");
    assert_eq!(report["is_generator"], false);
}

#[test]
fn verify_malformed_line_exits_3() {
    let dir = tmpdir();
    let path = dir.path().join("bad.fam");
    std::fs::write(&path, "n=4\n1,2\ntwo,3\n").unwrap();
    let out = run(&["verify", "--k", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn analyze_reports_kneser_chromatic_number() {
    let dir = tmpdir();
    let path = dir.path().join("pairs.fam");
    // all 2-subsets of [6]
    let mut text = String::from("n=6\n");
    for a in 1..=6u32 {
        for b in a + 1..=6 {
            text.push_str(&format!("{a},{b}\n"));
        }
    }
    std::fs::write(&path, text).unwrap();
    let graph_path = dir.path().join("pairs.graph");
    let out = run(&[
        "analyze",
        "--k",
        "2",
        "--input",
        path.to_str().unwrap(),
        "--emit-graph",
        graph_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "analyze.schema.json");
    assert_eq!(report["chromatic_number"], 4);
    assert_eq!(report["graph_order"], 15);
    assert_eq!(report["graph_edges"], 45);
    assert_eq!(report["clique_counts"][3], 15);

    let graph_text = std::fs::read_to_string(&graph_path).unwrap();
    assert!(graph_text.starts_with("graph n=15 m=45\n"));
}

#[test]
fn analyze_oversized_family_exits_4() {
    let dir = tmpdir();
    let path = dir.path().join("big.fam");
    let mut text = String::from("n=10\n");
    for mask in 1u32..1024 {
        let elems: Vec<String> = (1..=10u32)
            .filter(|e| mask >> (e - 1) & 1 == 1)
            .map(|e| e.to_string())
            .collect();
        text.push_str(&elems.join(","));
        text.push('\n');
    }
    std::fs::write(&path, text).unwrap();
    let out = run(&["analyze", "--k", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn search_matches_known_minimum() {
    let out = run(&["search", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "search.schema.json");
    assert_eq!(report["min_size"], 6);
    assert_eq!(report["status"], "complete");
}

#[test]
fn search_enumerate_emits_parseable_families() {
    let out = run(&["search", "--n", "5", "--k", "2", "--enumerate"]);
    let report = stdout_json(&out);
    assert_schema(&report, "search.schema.json");
    assert_eq!(report["optima_count"], 10);
    for fam_text in report["optima"].as_array().unwrap() {
        let fam = genset::setfam::SetFamily::parse_str(fam_text.as_str().unwrap()).unwrap();
        assert_eq!(fam.len(), 10);
    }
}

#[test]
fn sample_is_byte_identical_across_runs() {
    let dir = tmpdir();
    let path = dir.path().join("f.fam");
    std::fs::write(&path, "n=2\n1\n2\n").unwrap();
    let args = [
        "sample", "blowup", "--input", path.to_str().unwrap(), "--parts", "2", "--trials",
        "10000", "--seed", "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "sampling output must be byte-identical");
    let report = stdout_json(&a);
    assert_schema(&report, "sample.schema.json");
    assert_eq!(report["exact"], "1/2");
}

#[test]
fn sample_tail_reports_analytic_bound() {
    let dir = tmpdir();
    let path = dir.path().join("f.fam");
    let mut text = String::from("n=4\n-\n");
    for mask in 1u32..16 {
        let elems: Vec<String> = (1..=4u32)
            .filter(|e| mask >> (e - 1) & 1 == 1)
            .map(|e| e.to_string())
            .collect();
        text.push_str(&elems.join(","));
        text.push('\n');
    }
    std::fs::write(&path, text).unwrap();
    let out = run(&[
        "sample", "tail", "--input", path.to_str().unwrap(), "--t", "2", "--theta", "1/2",
        "--trials", "4000", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "sample.schema.json");
    let mean = report["mean"].as_f64().unwrap();
    let se = report["std_error"].as_f64().unwrap();
    let bound: f64 = {
        let s = report["analytic_bound"].as_str().unwrap();
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap()
    };
    assert!(mean - 4.0 * se <= bound);
}

#[test]
fn sample_oddcycle_subset_mode() {
    let dir = tmpdir();
    let path = dir.path().join("singles.fam");
    std::fs::write(&path, "n=3\n1\n2\n3\n").unwrap();
    let out = run(&[
        "sample", "oddcycle", "--input", path.to_str().unwrap(), "--subset-s", "1", "--trials",
        "50", "--seed", "1",
    ]);
    let report = stdout_json(&out);
    assert_schema(&report, "sample.schema.json");
    assert_eq!(report["mean"], 1.0);
}

#[test]
fn counterexample_small_case() {
    let out = run(&["counterexample", "--n", "6", "--verify-blowup"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "counterexample.schema.json");
    assert_eq!(report["family_size"], 22);
    assert_eq!(report["chi_two_element_graph"], 4);
    assert_eq!(report["blowup"]["adjacency_ok"], true);
}

#[test]
fn stability_command_reports() {
    let dir = tmpdir();
    let path = dir.path().join("f62.fam");
    let gen = run(&["gen", "--n", "6", "--k", "2", "--out", path.to_str().unwrap()]);
    assert!(gen.status.success());
    let out = run(&["stability", "--k", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "stability.schema.json");
    assert!(report["stability"]["bound_holds"].as_bool().unwrap());

    // K_3 as a family: every 2-clique is treacherous, no good clique
    let tri = dir.path().join("tri.fam");
    std::fs::write(&tri, "n=3\n1\n2\n3\n").unwrap();
    let out = run(&["stability", "--k", "2", "--input", tri.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_schema(&report, "stability.schema.json");
    assert_eq!(report["error"], "no-good-clique");
    assert_eq!(report["alpha"], "1");
}

#[test]
fn csv_covers_flat_reports_only() {
    let dir = tmpdir();
    let path = dir.path().join("f.fam");
    std::fs::write(&path, "n=2\n1\n2\n").unwrap();
    let out = run(&["--format", "csv", "verify", "--k", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,k,family_size,"));
    assert_eq!(text.lines().count(), 2);

    let out = run(&["--format", "csv", "search", "--n", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_format_renders_flat_lines() {
    let out = run(&["--format", "text", "search", "--n", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("min_size = 4"), "got: {text}");
}

#[test]
fn threads_flag_and_env_are_accepted() {
    let out = run(&["--threads", "2", "search", "--n", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = bin()
        .env("GENSET_THREADS", "2")
        .args(["search", "--n", "3", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["min_size"], 4);
}

#[test]
fn search_budget_times_out_gracefully() {
    let out = run(&["search", "--n", "6", "--k", "2", "--budget-nodes", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_schema(&report, "search.schema.json");
    assert_eq!(report["status"], "timeout");
    let lower = report["proven_lower"].as_u64().unwrap();
    let upper = report["min_size"].as_u64().unwrap();
    assert!(lower <= upper);
    assert_eq!(upper, 14); // canonical incumbent
}
