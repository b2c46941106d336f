//! End-to-end tests of the binary: exit codes, report schema, determinism,
//! batch output, and the catalog emitter.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn arrlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop(); // crates/
    p.push("core/tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_free_arrangement_exits_zero() {
    let out = arrlab(&["analyze", "catalog:lhat:3:3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["freeness"]["status"], "FREE");
    assert_eq!(r["freeness"]["exponents"][0], "2");
    assert_eq!(r["nu_prime"]["value"], "0");
    for check in ["walther", "conjecture3", "hirzebruch", "hs_vanishing"] {
        assert_eq!(r["verdicts"][check]["status"], "CONSISTENT", "{check}");
    }
}

#[test]
fn analyze_near_pencil_values() {
    let out = arrlab(&["analyze", "catalog:L:7:5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["jacobian"]["nu"], "1");
    assert_eq!(r["nu_prime"]["value"], "2");
    assert_eq!(r["nu_prime"]["exactness"], "EXACT");
}

#[test]
fn exit_code_ladder() {
    // pencil: not essential
    assert_eq!(
        arrlab(&["analyze", &fixture("pencil4.json")]).status.code(),
        Some(3)
    );
    // duplicate lines: non-reduced input
    assert_eq!(
        arrlab(&["analyze", &fixture("duplicate_lines.json")])
            .status
            .code(),
        Some(2)
    );
    // malformed scalar literal
    assert_eq!(
        arrlab(&["analyze", &fixture("bad_scalar.json")]).status.code(),
        Some(2)
    );
    // mixed-degree polynomial
    assert_eq!(
        arrlab(&["analyze", &fixture("mixed_degree_poly.json")])
            .status
            .code(),
        Some(2)
    );
    // missing file
    assert_eq!(
        arrlab(&["analyze", "no_such_file.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn cuspidal_cubic_with_rational_flag() {
    let out = arrlab(&["analyze", &fixture("cuspidal_cubic.json"), "--rational"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["jacobian"]["nu"], "1");
    assert_eq!(r["jacobian"]["tau_alg"], "2");
    assert_eq!(r["lattice"], Value::Null);
    assert_eq!(r["verdicts"]["hs_vanishing"]["status"], "CONSISTENT");
    assert_eq!(
        r["verdicts"]["hs_vanishing"]["details"]["ranges_hold"],
        "true"
    );
}

#[test]
fn reports_are_byte_identical() {
    let a = arrlab(&["analyze", "catalog:monomial:2"]);
    let b = arrlab(&["analyze", "catalog:monomial:2"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timings"));
}

#[test]
fn h1_flag_is_user_supplied() {
    let out = arrlab(&["analyze", "catalog:L:8:6", "--h1", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["nu_prime"]["exactness"], "USER_SUPPLIED");
    assert_eq!(r["nu_prime"]["h1_used"], "2");
    assert_eq!(r["nu_prime"]["value"], "4");
}

#[test]
fn odd_h1_fails_integrality() {
    // nu' must come out an integer; an odd eigenspace dimension cannot
    let out = arrlab(&["analyze", "catalog:L:8:6", "--h1", "1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn skip_spectrum_flag() {
    let out = arrlab(&["analyze", "catalog:generic:4", "--skip-spectrum"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["spectrum"], Value::Null);
    assert_eq!(r["nu_prime"], Value::Null);
    assert!(r["verdicts"]["walther"].is_null());
}

#[test]
fn batch_over_variant_directory() {
    let dir = fixture("conj12");
    let out = arrlab(&["batch", &dir, "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10); // 9 files + aggregate
    // per-file lines arrive in sorted path order
    let paths: Vec<String> = lines[..9]
        .iter()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            v["path"].as_str().unwrap().to_string()
        })
        .collect();
    let mut sorted = paths.clone();
    sorted.sort();
    assert_eq!(paths, sorted);
    let aggregate: Value = serde_json::from_str(lines[9]).unwrap();
    assert_eq!(aggregate["aggregate"]["files"], "9");
    assert_eq!(aggregate["aggregate"]["violation"], "0");
    assert_eq!(
        aggregate["aggregate"]["conjecture12"]["status"],
        "CONSISTENT"
    );
    assert_eq!(
        aggregate["aggregate"]["conjecture12"]["details"]["classes"],
        "3"
    );
}

#[test]
fn batch_single_file_matches_analyze() {
    let path = fixture("monomial223_plus_line.json");
    let tmp = std::env::temp_dir().join("arrlab_single_batch");
    std::fs::create_dir_all(&tmp).unwrap();
    let dest = tmp.join("only.json");
    std::fs::copy(&path, &dest).unwrap();

    let analyze = arrlab(&["analyze", dest.to_str().unwrap(), "--json"]);
    let batch = arrlab(&["batch", tmp.to_str().unwrap()]);
    let single: Value = stdout_json(&analyze);
    let text = String::from_utf8_lossy(&batch.stdout);
    let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["report"], single);
    std::fs::remove_dir_all(&tmp).ok();
}

#[test]
fn batch_continues_past_bad_files() {
    let tmp = std::env::temp_dir().join("arrlab_mixed_batch");
    std::fs::create_dir_all(&tmp).unwrap();
    std::fs::copy(
        fixture("monomial223_plus_line.json"),
        tmp.join("good.json"),
    )
    .unwrap();
    std::fs::copy(fixture("pencil4.json"), tmp.join("pencil.json")).unwrap();
    std::fs::write(tmp.join("broken.json"), "{not json").unwrap();

    let out = arrlab(&["batch", tmp.to_str().unwrap()]);
    // max severity: pencil gives 3, broken gives 2, good gives 0
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    let aggregate: Value = serde_json::from_str(lines[3]).unwrap();
    assert_eq!(aggregate["aggregate"]["errors"], "2");
    assert_eq!(aggregate["aggregate"]["files"], "3");
    std::fs::remove_dir_all(&tmp).ok();
}

#[test]
fn empty_batch_directory() {
    let tmp = std::env::temp_dir().join("arrlab_empty_batch");
    std::fs::create_dir_all(&tmp).unwrap();
    let out = arrlab(&["batch", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 1); // just the aggregate
    std::fs::remove_dir_all(&tmp).ok();
}

#[test]
fn catalog_emits_parseable_input() {
    let out = arrlab(&["catalog", "catalog:monomial:3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["cyclotomic_order"], 3);
    assert_eq!(doc["lines"].as_array().unwrap().len(), 9);

    // the emitted document round-trips through analyze
    let tmp = std::env::temp_dir().join("arrlab_catalog_roundtrip.json");
    std::fs::write(&tmp, &out.stdout).unwrap();
    let again = arrlab(&["analyze", tmp.to_str().unwrap(), "--json"]);
    assert_eq!(again.status.code(), Some(0));
    let r = stdout_json(&again);
    assert_eq!(r["freeness"]["status"], "FREE");
    assert_eq!(r["jacobian"]["r"], "4");
    std::fs::remove_file(&tmp).ok();
}

#[test]
fn timings_flag_adds_section() {
    let out = arrlab(&["analyze", "catalog:generic:4", "--timings"]);
    let r = stdout_json(&out);
    assert!(r["timings_ms"].is_object());
}
