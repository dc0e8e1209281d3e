mod common;

use std::fs;

use common::{fixture, fkt, json_of};
use freeknot::complexes::parse_complex;

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = fkt(&full);
    (json_of(&out), out.status.code().unwrap())
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn parse_reports_canonical_forms() {
    let (v, code) = json(&["parse", "3 1 3 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "parse");
    assert_eq!(v["diagrams"][0]["canonical"], "1 2 1 2");
    assert_eq!(v["diagrams"][0]["crossings"], 2);
}

#[test]
fn parse_reads_code_files() {
    let (v, code) = json(&["parse", &format!("@{}", path("codes.txt"))]);
    assert_eq!(code, 0);
    let ds = v["diagrams"].as_array().unwrap();
    assert_eq!(ds.len(), 7);
    assert!(ds.iter().any(|d| d["components"] == 2));
}

#[test]
fn text_output_is_the_default() {
    let out = fkt(&["parse", "1 2 1 2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(serde_json::from_slice::<serde_json::Value>(&out.stdout).is_err());
    assert!(String::from_utf8_lossy(&out.stdout).contains("1 2 1 2"));
}

#[test]
fn bad_codes_are_usage_errors() {
    for bad in ["1 2", "1 1 1", "a b / c"] {
        let out = fkt(&["--format", "json", "parse", bad]);
        assert_eq!(out.status.code(), Some(1), "{bad}");
        assert_eq!(json_of(&out)["error"]["kind"], "usage");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(fkt(&["tower"]).status.code(), Some(1));
    assert_eq!(fkt(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(fkt(&["--version"]).status.code(), Some(0));
}

#[test]
fn parity_uses_the_component_rule_for_links() {
    let (v, _) = json(&["parity", "1 2 1 3 2 3"]);
    assert_eq!(v["rule"], "gaussian");
    assert_eq!(v["is_odd"], false);
    let (v, _) = json(&["parity", "1 2 / 1 2"]);
    assert_eq!(v["rule"], "mixed_odd");
    assert!(v["is_odd"].is_null());
    assert_eq!(v["crossings"][0]["kind"], "mixed");
    assert_eq!(v["crossings"][0]["parity"], "odd");
}

#[test]
fn tower_lists_orders() {
    let (v, _) = json(&["tower", "1 2 1 3 2 4 3 4"]);
    assert_eq!(v["terminal"], "crossing_free");
    assert_eq!(v["order"], 2);
    let (v, _) = json(&["tower", "1 2 3 1 2 3"]);
    assert_eq!(v["terminal"], "fixpoint");
    assert_eq!(v["iteratively_odd"], false);
    assert!(v["orders"].as_array().unwrap().iter().all(|o| o["order"] == "stably_even"));
    let out = fkt(&["tower", "1 2 1 2"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("iteratively odd, order 1"));
}

#[test]
fn smooth_reports_component_change() {
    let (v, code) = json(&["smooth", "1 2 1 2", "--crossing", "1", "--choice", "split"]);
    assert_eq!(code, 0);
    assert_eq!(v["components_after"], 2);
    assert_eq!(v["result"], "2 / 2");
    let (v, _) = json(&["smooth", "1 2 1 2", "--crossing", "1", "--choice", "reverse"]);
    assert_eq!(v["components_after"], 1);
    let (_, code) = json(&["smooth", "1 2 1 2", "--crossing", "9", "--choice", "split"]);
    assert_eq!(code, 1);
}

#[test]
fn slice_certificates() {
    let (v, code) = json(&["slice", "1 2 1 2"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "elementary slice");
    assert_eq!(v["certificate"]["matching"][0], serde_json::json!(["1", "2"]));
    let (v, _) = json(&["slice", "1 2 1 3 2 3"]);
    assert_eq!(v["verdict"], "not elementary slice");
    assert_eq!(v["basis"], "predicate-level");
    let (v, _) = json(&["slice", "1 1", "--allow-self-pairs"]);
    assert_eq!(v["self_pairs_allowed"], true);
    assert_eq!(v["verdict"], "elementary slice");
    let (v, code) = json(&["slice", "1 2 / 1 2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "violation");
}

#[test]
fn complex_validate_fixtures() {
    let (v, code) = json(&["complex", "validate", &path("disc.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["surface"]["euler_characteristic"], 1);
    assert_eq!(v["class"]["elementary"], true);
    let (v, code) = json(&["complex", "validate", &path("cusp_odd.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["parity"]["violations"].as_array().unwrap().len(), 2);
    let (v, code) = json(&["complex", "validate", &path("sphere_cyclic.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["parity"]["checked"], false);
    let (_, code) = json(&["complex", "validate", &path("crossing_twice.json")]);
    assert_eq!(code, 2);
    let (v, code) = json(&["complex", "validate", &path("malformed.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "usage");
    let (_, code) = json(&["complex", "validate", "/nonexistent/k.json"]);
    assert_eq!(code, 1);
}

#[test]
fn complex_smooth_writes_the_result() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.json");
    let (v, code) = json(&[
        "complex", "smooth", &path("sphere_cusp.json"), "--line", "0", "--choice", "a", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["after"]["euler_characteristic"], 4);
    assert_eq!(v["after"]["components"], 2);
    assert_eq!(v["bound_holds"], true);
    let k = parse_complex(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(k.euler_characteristic(), 4);
    assert!(k.lines().is_empty());
    let (_, code) = json(&["complex", "smooth", &path("sphere_cusp.json"), "--line", "7", "--choice", "a"]);
    assert_eq!(code, 1);
    let (_, code) = json(&["complex", "smooth", &path("torus_triple.json"), "--line", "0", "--choice", "b"]);
    assert_eq!(code, 2);
}

#[test]
fn complex_double_closes_the_surface() {
    let (v, code) = json(&["complex", "double", &path("one_line.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["after"]["closed"], true);
    assert!(v["complex"].is_object());
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let (v, _) = json(&["complex", "double", &path("disc.json"), "--out", out.to_str().unwrap()]);
    assert!(v["complex"].is_null());
    assert!(parse_complex(&fs::read_to_string(&out).unwrap()).unwrap().is_closed());
    let (_, code) = json(&["complex", "double", &path("sphere_cyclic.json")]);
    assert_eq!(code, 2);
}

#[test]
fn cylinder_check_reports_conditions() {
    let (v, code) = json(&["cylinder", "check", &path("cyl_normal.json")]);
    assert_eq!((v["normal"].clone(), code), (serde_json::json!(true), 0));
    assert_eq!(v["meridian_parity_even"], true);
    for (name, cond) in [("cyl_cond1.json", 1), ("cyl_cond2.json", 2), ("cyl_cond3.json", 3)] {
        let (v, code) = json(&["cylinder", "check", &path(name)]);
        assert_eq!(code, 0);
        assert_eq!(v["first_violation"]["condition"], cond, "{name}");
    }
    let (v, _) = json(&["cylinder", "check", &path("cyl_readings.json"), "--verbose"]);
    assert_ne!(v["condition1_single_circle"], v["condition1_same_circle"]);
    let (v, _) = json(&["cylinder", "check", &path("cyl_normal.json")]);
    assert!(v.get("condition1_same_circle").is_none());
}

#[test]
fn enumerate_counts() {
    let (v, code) = json(&["enumerate", "--max-chords", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["total"]["diagrams"], 105);
    let (v, _) = json(&["enumerate", "--max-chords", "3", "--stats"]);
    let counts: Vec<_> = v["by_chords"].as_array().unwrap().iter().map(|c| c["diagrams"].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 1, 2, 5]);
    let (v, _) = json(&["enumerate", "--max-chords", "2", "--components", "2"]);
    assert!(v["total"]["odd"].is_null());
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_fkt"))
        .args(["--format", "json", "enumerate"])
        .env("FKT_MAX_CHORDS", "2")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["max_chords"], 2);
}

#[test]
fn deduce_fixtures() {
    let (v, code) = json(&["deduce", "--facts", &path("facts_odd_slice.json")]);
    assert_eq!(code, 0);
    let ds = v["deductions"].as_array().unwrap();
    assert!(ds.iter().any(|d| d["rule"] == "odd-criterion" && d["fact"]["predicate"] == "slice"));
    let (v, code) = json(&["deduce", "--facts", &path("facts_contradiction.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "violation");
    let (_, code) = json(&["deduce", "--facts", &path("malformed.json")]);
    assert_eq!(code, 1);
}
