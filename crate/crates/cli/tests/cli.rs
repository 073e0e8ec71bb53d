//! End-to-end tests of the `cubecomp` binary: frozen input/output pairs,
//! exit-code contracts, and byte-level determinism under fixed seeds.

use serde_json::{json, Value};
use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], input: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cubecomp"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn cubecomp");
    if let Some(text) = input {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("wait for cubecomp")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

const UNIT_CUBE: &str = r#"{"cube":{"a":"1","e":["0","0","0"],"f":["1","1","1"],"b":"1"}}"#;
const BASE_CUBE: &str = r#"{"cube":{"a":"1","e":["0","0","0"],"f":["0","0","0"],"b":"-1"}}"#;

#[test]
fn invariant_of_unit_cube_over_q() {
    let out = run(&["invariant"], Some(UNIT_CUBE));
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["delta"], json!("5"));
    assert_eq!(doc["class"], json!("5"));
    assert_eq!(doc["field"], json!("Q"));
    assert_eq!(doc["shape"], json!("split"));
}

#[test]
fn invariant_over_prime_field_and_quadratic_shape() {
    let out = run(&["invariant", "--field", "Fp:7"], Some(UNIT_CUBE));
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["delta"], json!(5));
    assert_eq!(doc["field"], json!({"Fp": 7}));

    let out = run(
        &["invariant", "--algebra", r#"{"quad_pair":"5"}"#],
        Some(UNIT_CUBE),
    );
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["shape"], json!({"quad_pair": "5"}));
    assert_eq!(doc["delta"], json!("-15"));
}

#[test]
fn malformed_json_exits_2_with_position() {
    let out = run(&["invariant"], Some(r#"{"cube": {"a": }"#));
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "stderr lacks a position: {err}");
}

#[test]
fn missing_cube_key_exits_2() {
    let out = run(&["invariant"], Some(r#"{"not_a_cube": 1}"#));
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cube"), "unhelpful message: {err}");
}

#[test]
fn slice_forms_share_the_quartic_discriminant() {
    let out = run(&["slice"], Some(UNIT_CUBE));
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    let slices = doc["slices"].as_array().expect("slices array");
    assert_eq!(slices.len(), 3);
    for s in slices {
        assert_eq!(s["disc"], doc["delta"]);
    }

    let nonsplit = run(
        &["slice", "--algebra", r#"{"quad_pair":"5"}"#],
        Some(UNIT_CUBE),
    );
    assert_eq!(code(&nonsplit), 2);
}

#[test]
fn reduce_emits_a_reduced_cube_and_preserves_the_class() {
    let input = r#"{"cube":{"a":"2","e":["1","0","3"],"f":["1","-2","1"],"b":"4"}}"#;
    let out = run(&["reduce"], Some(input));
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    let red = &doc["reduced"];
    assert_eq!(red["a"], json!("1"));
    assert_eq!(red["e"], json!(["0", "0", "0"]));
    assert!(!doc["word"].as_array().unwrap().is_empty());

    let before = stdout_json(&run(&["invariant"], Some(input)));
    assert_eq!(before["class"], doc["class"]);

    let degenerate = run(
        &["reduce"],
        Some(r#"{"cube":{"a":"1","e":["0","0","0"],"f":["-1","-1","-1"],"b":"-2"}}"#),
    );
    assert_eq!(code(&degenerate), 2);
}

#[test]
fn composition_round_trip_and_consistency_check() {
    let fwd = run(&["to-comp"], Some(BASE_CUBE));
    assert_eq!(code(&fwd), 0);
    let doc = stdout_json(&fwd);
    assert_eq!(doc["comp"]["q"]["xy"], json!(["1", "1", "1"]));
    assert_eq!(doc["comp"]["q"]["xx"], json!(["0", "0", "0"]));

    let back = run(
        &["to-cube"],
        Some(&serde_json::to_string(&doc).unwrap()),
    );
    assert_eq!(code(&back), 0);
    let cube = &stdout_json(&back)["cube"];
    let original: Value = serde_json::from_str(BASE_CUBE).unwrap();
    assert_eq!(cube, &original["cube"]);

    // A document whose q block disagrees with its own cube is invalid.
    let mut tampered = doc.clone();
    tampered["comp"]["q"]["xy"] = json!(["1", "1", "2"]);
    let out = run(
        &["to-cube"],
        Some(&serde_json::to_string(&tampered).unwrap()),
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn check_axioms_passes_and_tampered_form_yields_replayable_counterexample() {
    let ok = run(&["check-axioms", "--samples", "40", "--seed", "7"], Some(UNIT_CUBE));
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout_json(&ok)["pass"], json!(true));

    let tampered = r#"{"cube":{"a":"1","e":["0","0","0"],"f":["1","1","1"],"b":"1"},
        "q":{"xx":["0","0","0"],"xy":["1","1","2"],"yy":["0","0","0"]}}"#;
    let bad = run(&["check-axioms", "--samples", "40", "--seed", "7"], Some(tampered));
    assert_eq!(code(&bad), 3);
    let ce = stdout_json(&bad);
    assert!(ce["counterexample"]["axiom"].is_string());

    // The counterexample document replays with no flags at all.
    let replay = run(&["check-axioms"], Some(&serde_json::to_string(&ce).unwrap()));
    assert_eq!(code(&replay), 3);
    assert_eq!(stdout_json(&replay)["counterexample"], ce["counterexample"]);
}

#[test]
fn tits_frozen_pair_and_norm_rejection() {
    let backward = run(
        &["tits"],
        Some(r#"{"pair":{"e":["1","1","1"],"nu":{"x":"1","y":"0","d":"5"}}}"#),
    );
    assert_eq!(code(&backward), 0);
    let cube = &stdout_json(&backward)["cube"];
    assert_eq!(cube["a"], json!("1"));
    assert_eq!(cube["e"], json!(["0", "0", "0"]));
    assert_eq!(cube["f"], json!(["-1", "-1", "-1"]));
    assert_eq!(cube["b"], json!("-2"));

    let forward = run(&["tits"], Some(UNIT_CUBE));
    assert_eq!(code(&forward), 0);
    let doc = stdout_json(&forward);
    // The output carries both keys and re-validates through the same
    // subcommand.
    let again = run(&["tits"], Some(&serde_json::to_string(&doc).unwrap()));
    assert_eq!(code(&again), 0);
    assert_eq!(stdout_json(&again), doc);
    // Dropping the cube exercises the backward direction.
    let pair_only = json!({ "pair": doc["pair"].clone() });
    let back = run(&["tits"], Some(&serde_json::to_string(&pair_only).unwrap()));
    assert_eq!(code(&back), 0);
    let original: Value = serde_json::from_str(UNIT_CUBE).unwrap();
    assert_eq!(stdout_json(&back)["cube"], original["cube"]);

    let violating = run(
        &["tits"],
        Some(r#"{"pair":{"e":["1","1","1"],"nu":{"x":"2","y":"0","d":"5"}}}"#),
    );
    assert_eq!(code(&violating), 2);
    let err = String::from_utf8_lossy(&violating.stderr);
    assert!(err.contains("norm"), "unhelpful message: {err}");
}

#[test]
fn springer_hermitian_five_matches_known_classes() {
    let out = run(&["springer"], Some(r#"{"jordan":{"hermitian":"5"}}"#));
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["classes"]["k_c"], json!("5"));
    assert_eq!(doc["classes"]["k_e"], json!("1"));
    assert_eq!(doc["classes"]["k_j"], json!("5"));
    assert_eq!(doc["classes"]["product_trivial"], json!(true));
    // The derived cube's invariant document re-validates.
    let inv = run(
        &["invariant"],
        Some(&serde_json::to_string(&json!({ "cube": doc["derived_cube"].clone() })).unwrap()),
    );
    assert_eq!(code(&inv), 0);
    assert_eq!(stdout_json(&inv)["delta"], doc["delta"]);

    let zero = run(&["springer"], Some(r#"{"jordan":{"hermitian":"0"}}"#));
    assert_eq!(code(&zero), 2);
}

#[test]
fn gauss_reports_module_data_for_the_unit_cube() {
    let out = run(&["gauss", "--seed", "3"], Some(UNIT_CUBE));
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["discriminant"], json!("5"));
    assert_eq!(doc["is_primitive"], json!(true));
    for m in doc["modules"].as_array().unwrap() {
        assert_eq!(m["norm"], json!("-1"));
    }
    for s in doc["slice_forms"].as_array().unwrap() {
        assert_eq!(s["primitive"], json!(true));
        assert_eq!(s["content"], json!("1"));
    }
    assert_eq!(doc["checks"]["colinearity"], json!(true));

    let finite = run(&["gauss", "--field", "Fp:5"], Some(UNIT_CUBE));
    assert_eq!(code(&finite), 2);
}

#[test]
fn orbit_census_over_f5_has_the_known_sizes() {
    let out = run(&["orbits", "--field", "Fp:5"], None);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["total_states"], json!(390625));
    assert_eq!(doc["group_order"], json!(6912000u64));
    assert_eq!(doc["orbit_count"], json!(14));
    let generic: Vec<u32> = doc["generic_orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as u32)
        .collect();
    let mut sizes: Vec<(u64, u64)> = doc["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|o| generic.contains(&(o["id"].as_u64().unwrap() as u32)))
        .map(|o| (o["delta_class"].as_u64().unwrap(), o["size"].as_u64().unwrap()))
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![(1, 216000), (2, 96000)]);

    let csv = run(&["orbits", "--field", "Fp:5", "--format", "csv"], None);
    assert_eq!(code(&csv), 0);
    let text = String::from_utf8_lossy(&csv.stdout);
    assert!(text.starts_with("orbit_id,size,delta_class,representative"));

    let rational = run(&["orbits"], None);
    assert_eq!(code(&rational), 2);
}

#[test]
fn verify_is_deterministic_per_seed() {
    let args = ["verify", "--field", "Fp:7", "--samples", "150", "--seed", "42"];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "same argv and seed must give identical bytes");
    let doc = stdout_json(&a);
    assert_eq!(doc["pass"], json!(true));
    let names: Vec<&str> = doc["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        ["identities", "equivariance", "slicing", "bijection", "axioms", "reduction"]
    );

    let other = run(
        &["verify", "--field", "Fp:7", "--samples", "150", "--seed", "43"],
        None,
    );
    assert_eq!(code(&other), 0);
}

#[test]
fn out_flag_writes_the_document_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inv.json");
    let out = run(
        &["invariant", "--out", path.to_str().unwrap()],
        Some(UNIT_CUBE),
    );
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["delta"], json!("5"));
}
