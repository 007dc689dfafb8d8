//! End-to-end tests driving the compiled binary: pinned examples, exit
//! codes, output determinism, the environment override, CSV profiles, and
//! schema validation of every JSON report.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hbdmu"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("HBDMU_GRID_SIZE").output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"))
}

// ---------------------------------------------------------------------------
// minimal JSON Schema validator (draft-07 subset used by the shipped schema)
// ---------------------------------------------------------------------------

struct Schema {
    root: Value,
}

impl Schema {
    fn load() -> Schema {
        let text = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/schemas/report.schema.json"
        ))
        .expect("schema file present");
        Schema { root: serde_json::from_str(&text).expect("schema parses") }
    }

    fn resolve<'a>(&'a self, reference: &str) -> &'a Value {
        let path = reference.trim_start_matches("#/");
        let mut node = &self.root;
        for part in path.split('/') {
            node = node.get(part).unwrap_or_else(|| panic!("unresolvable $ref {reference}"));
        }
        node
    }

    fn validate(&self, schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
        if let Some(Value::String(r)) = schema.get("$ref") {
            let resolved = self.resolve(r).clone();
            self.validate(&resolved, value, path, errors);
            return;
        }
        if let Some(expected) = schema.get("const") {
            if expected != value {
                errors.push(format!("{path}: expected const {expected}, got {value}"));
            }
        }
        if let Some(Value::Array(options)) = schema.get("enum") {
            if !options.contains(value) {
                errors.push(format!("{path}: {value} not in enum"));
            }
        }
        if let Some(t) = schema.get("type") {
            if !type_matches(t, value) {
                errors.push(format!("{path}: type mismatch (want {t}, got {value})"));
            }
        }
        if let Some(Value::Array(required)) = schema.get("required") {
            if let Value::Object(map) = value {
                for key in required {
                    let key = key.as_str().expect("required entries are strings");
                    if !map.contains_key(key) {
                        errors.push(format!("{path}: missing required field `{key}`"));
                    }
                }
            }
        }
        if let Some(Value::Object(props)) = schema.get("properties") {
            if let Value::Object(map) = value {
                for (key, sub) in props {
                    if let Some(v) = map.get(key) {
                        self.validate(sub, v, &format!("{path}.{key}"), errors);
                    }
                }
            }
        }
        if let Some(items) = schema.get("items") {
            if let Value::Array(arr) = value {
                for (k, v) in arr.iter().enumerate() {
                    self.validate(items, v, &format!("{path}[{k}]"), errors);
                }
            }
        }
        for key in ["oneOf", "anyOf"] {
            if let Some(Value::Array(options)) = schema.get(key) {
                let mut matched = 0;
                for option in options {
                    let mut sub_errors = Vec::new();
                    self.validate(option, value, path, &mut sub_errors);
                    if sub_errors.is_empty() {
                        matched += 1;
                    }
                }
                if matched == 0 {
                    errors.push(format!("{path}: no {key} branch matched"));
                }
            }
        }
    }

    fn check(&self, value: &Value) {
        let mut errors = Vec::new();
        let root = self.root.clone();
        self.validate(&root, value, "$", &mut errors);
        assert!(errors.is_empty(), "schema violations: {errors:#?}");
    }
}

fn type_matches(t: &Value, value: &Value) -> bool {
    match t {
        Value::String(name) => single_type_matches(name, value),
        Value::Array(names) => names
            .iter()
            .any(|n| n.as_str().map_or(false, |n| single_type_matches(n, value))),
        _ => true,
    }
}

fn single_type_matches(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "number" => value.is_number(),
        "integer" => value.is_i64() || value.is_u64(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}

fn check_schema(out: &Output) -> Value {
    let v = stdout_json(out);
    Schema::load().check(&v);
    v
}

// ---------------------------------------------------------------------------
// pinned examples
// ---------------------------------------------------------------------------

#[test]
fn certify_sarason_equality_holds() {
    let out = run(&["certify", "--theorem", "C", "--pair", "sarason", "--zeta", "1,0", "--mu", "atoms:1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    assert_eq!(v["result"]["verdict"], "holds");
    assert_eq!(v["result"]["mode"], "exact");
}

#[test]
fn certify_negative_control_exits_two() {
    let out = run(&[
        "certify", "--theorem", "A", "--pair", "costara-ransford", "--atoms", "1,0",
        "--mu", "atoms:1,0;-1,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = check_schema(&out);
    assert_eq!(v["result"]["verdict"], "fails");
}

#[test]
fn factor_two_plus_two_cos() {
    let out = run(&["factor", "--coeffs", "1,0;2,0;1,0", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    let coeffs = v["result"]["p"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 2);
    for c in coeffs {
        assert!((c[0].as_f64().unwrap() - 1.0).abs() < 1e-10);
        assert!(c[1].as_f64().unwrap().abs() < 1e-10);
    }
    assert!(v["result"]["residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn kernel_norms_closed_form() {
    let out = run(&["kernel-norms", "--mu", "atoms:1,0", "--w", "0.5,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    let got = v["result"]["cauchy_norm_dmu"].as_f64().unwrap();
    assert!((got - 8.0 / 3.0).abs() < 1e-12);
    // with a pair, the H(b) norms appear and agree for the Sarason pair
    let out = run(&[
        "kernel-norms", "--mu", "atoms:1,0", "--w", "0.5,0",
        "--pair", "sarason", "--zeta", "1,0",
    ]);
    let v = check_schema(&out);
    let hb = v["result"]["cauchy_norm_hb"].as_f64().unwrap();
    assert!((hb - 8.0 / 3.0).abs() < 1e-12);
}

#[test]
fn potential_values_and_infinity() {
    let out = run(&["potential", "--mu", "atoms:1,0", "--z", "0.5,0"]);
    let v = check_schema(&out);
    assert_eq!(v["result"]["potential"].as_f64().unwrap(), 4.0);
    assert_eq!(v["result"]["poisson"].as_f64().unwrap(), 3.0);

    let out = run(&["potential", "--mu", "atoms:1,0", "--z", "1,0"]);
    let v = check_schema(&out);
    assert_eq!(v["result"]["potential"], "inf");
}

#[test]
fn example_costara_ransford() {
    let out = run(&["example", "costara-ransford", "--atoms", "1,0"]);
    let v = check_schema(&out);
    let a = v["result"]["a"]["coeffs"].as_array().unwrap();
    assert!((a[0][0].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((a[1][0].as_f64().unwrap() + 0.5).abs() < 1e-12);
    assert!(v["result"]["boundary_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn example_exponential_has_outer_mate() {
    let out = run(&["example", "exponential", "--n", "2", "--grid-size", "1024"]);
    let v = check_schema(&out);
    assert_eq!(v["result"]["a"]["type"], "outer_samples");
    assert!(v["result"]["boundary_residual"].as_f64().unwrap() <= 1e-4);
}

#[test]
fn mate_from_descriptor_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    std::fs::write(&path, r#"{"type":"poly","coeffs":[[0.5,0],[0.5,0]]}"#).unwrap();
    let out = run(&["mate", "--b-file", path.to_str().unwrap(), "--grid-size", "1024"]);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    assert_eq!(v["result"]["mate"]["type"], "outer_samples");
    let zeros = v["result"]["boundary_zeros"].as_array().unwrap();
    assert_eq!(zeros.len(), 1);
    assert_eq!(zeros[0]["order"], 1);
    // a(0) = 1/2 for the mate of (1+z)/2
    let a0 = v["result"]["value_at_zero"][0].as_f64().unwrap();
    assert!((a0 - 0.5).abs() < 1e-6);
}

#[test]
fn mate_from_profile_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let g = 1024;
    let mut text = String::from("theta,value\n");
    for k in 0..g {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / g as f64;
        // log |1 - e^{i theta}| - log 2: outer completion is (1 - z)/2
        let value = if k == 0 {
            "-inf".to_string()
        } else {
            format!("{}", ((2.0 * (theta / 2.0).sin()).abs() / 2.0).ln())
        };
        text += &format!("{theta},{value}\n");
    }
    std::fs::write(&path, text).unwrap();
    let out = run(&["mate", "--profile-csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    let mean = v["result"]["mean_log_modulus"].as_f64().unwrap();
    assert!((mean - 0.5_f64.ln()).abs() < 1e-9, "mean {mean}");
}

#[test]
fn dnorm_of_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"type":"poly","coeffs":[[0,0],[1,0]]}"#).unwrap();
    let out = run(&[
        "dnorm", "--f-file", path.to_str().unwrap(), "--mu", "atoms:1,0",
        "--grid-size", "1024",
    ]);
    let v = check_schema(&out);
    // ||z||^2_{D_mu} = 1 (H^2) + 1 (local integral)
    assert!((v["result"]["value"].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn clark_verdicts_and_exit_codes() {
    let base = [
        "clark", "--pair", "costara-ransford", "--atoms", "1,0", "--grid-size", "2048",
    ];
    let mut singular = base.to_vec();
    singular.extend(["--lambda", "1,0"]);
    let out = run(&singular);
    assert_eq!(out.status.code(), Some(2), "lambda = 1 hits b(1): not AC");
    let v = check_schema(&out);
    assert_eq!(v["result"]["report"]["verdict"], "fails");

    let mut ac = base.to_vec();
    ac.extend(["--lambda", "0,1"]);
    let out = run(&ac);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    assert_eq!(v["result"]["report"]["verdict"], "holds");
    assert!(v["result"]["density_max"].is_number());
}

#[test]
fn continuous_certificate_for_exponential() {
    let out = run(&[
        "certify", "--theorem", "continuous", "--pair", "exponential", "--n", "2",
        "--mu", "roots_of_unity:2", "--grid-size", "4096",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    assert_eq!(v["result"]["verdict"], "holds");
    assert!(v["result"]["evidence"]["atom_ratios"].as_array().unwrap().len() == 2);
}

#[test]
fn corona_certify_path() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = dir.path().join("f1.json");
    let f2 = dir.path().join("f2.json");
    std::fs::write(&f1, r#"{"type":"poly","coeffs":[[-1,0],[1,0]]}"#).unwrap();
    std::fs::write(&f2, r#"{"type":"poly","coeffs":[[1,0],[-2,0],[1,0]]}"#).unwrap();
    let out = run(&[
        "certify", "--theorem", "corona",
        "--f1-file", f1.to_str().unwrap(), "--f2-file", f2.to_str().unwrap(),
        "--atoms", "1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    assert!(v["result"]["estimate_refined"].as_f64().unwrap() < 1e-2);
}

// ---------------------------------------------------------------------------
// contract: exit codes, determinism, environment, CSV
// ---------------------------------------------------------------------------

#[test]
fn measure_json_file_with_masses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.json");
    std::fs::write(&path, r#"{"atoms":[[1,0]],"masses":[2.0]}"#).unwrap();
    let out = run(&["potential", "--mu", path.to_str().unwrap(), "--z", "0,0"]);
    let v = check_schema(&out);
    assert_eq!(v["result"]["potential"].as_f64().unwrap(), 2.0);
    assert_eq!(v["result"]["total_mass"].as_f64().unwrap(), 2.0);
}

#[test]
fn factor_rejects_negative_weight() {
    // omega = cos(theta) dips negative on the circle
    let out = run(&["factor", "--coeffs", "0.5,0;0,0;0.5,0", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["error"]["kind"], "negative");
}

#[test]
fn usage_error_is_64() {
    let out = run(&["certify", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn domain_error_is_structured() {
    let out = run(&["certify", "--theorem", "C", "--pair", "sarason", "--zeta", "0.5,0", "--mu", "atoms:1,0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["error"]["kind"], "domain");
    assert!(v["error"]["message"].as_str().unwrap().contains("circle"));
}

#[test]
fn byte_identical_reruns() {
    let args = [
        "certify", "--theorem", "C", "--pair", "sarason", "--zeta", "1,0",
        "--mu", "atoms:1,0", "--grid-size", "2048",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn env_grid_size_is_echoed() {
    let out = bin()
        .args(["potential", "--mu", "atoms:1,0", "--z", "0,0"])
        .env("HBDMU_GRID_SIZE", "1024")
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["grid"]["boundary_size"], 1024);
    assert_eq!(v["grid"]["size_source"], "env");
    // the flag wins over the environment
    let out = bin()
        .args(["potential", "--mu", "atoms:1,0", "--z", "0,0", "--grid-size", "512"])
        .env("HBDMU_GRID_SIZE", "1024")
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["grid"]["boundary_size"], 512);
    assert_eq!(v["grid"]["size_source"], "flag");
}

#[test]
fn csv_profiles_have_pinned_headers() {
    let out = run(&[
        "certify", "--theorem", "continuous", "--pair", "costara-ransford",
        "--atoms", "1,0", "--mu", "atoms:1,0", "--output", "csv", "--grid-size", "2048",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,value"));
    assert!(lines.next().unwrap().split(',').count() == 2);

    let out = run(&[
        "certify", "--theorem", "B", "--pair", "costara-ransford", "--atoms", "1,0",
        "--mu", "atoms:1,0", "--output", "csv", "--grid-size", "2048",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().next(), Some("re,im,value"));
}

#[test]
fn selftest_passes_and_reports() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = check_schema(&out);
    assert_eq!(v["result"]["all_passed"], true);
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 9);
    // one human-readable line per criterion lands on stderr
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().filter(|l| l.starts_with("criterion")).count(), 9);
}

#[test]
fn pair_file_roundtrip() {
    // descriptors emitted by `example` feed back through --pair-file
    let out = run(&["example", "costara-ransford", "--atoms", "1,0;-1,0"]);
    let v = stdout_json(&out);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(
        f,
        "{}",
        serde_json::json!({"b": v["result"]["b"], "a": v["result"]["a"]})
    )
    .unwrap();
    let out = run(&[
        "certify", "--theorem", "C", "--pair", "file",
        "--pair-file", path.to_str().unwrap(),
        "--mu", "roots_of_unity:2", "--grid-size", "2048",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = check_schema(&out);
    assert_eq!(v["result"]["verdict"], "holds");
}
