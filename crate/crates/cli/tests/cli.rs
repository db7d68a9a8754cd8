use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn config(name: &str) -> String {
    root().join("configs").join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn nichols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nichols")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = nichols(&all);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("valid JSON report"))
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("nichols-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Null => {}
        Value::String(s) => out.push(s.clone()),
        other => out.push(other.to_string()),
    }
}

#[test]
fn fk3_table_and_total() {
    let o = nichols(&["fk", "--n", "3", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dims: [1, 3, 4, 3, 1]"), "{text}");
    assert!(text.contains("total: 12"), "{text}");
    let (code, report) = json(&["fk", "--n", "3", "--max-degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["total"], 12);
    assert_eq!(report["command"], "fk");
}

#[test]
fn super_a2_is_rigid() {
    for extra in [None, Some("--pre-nichols")] {
        let c = config("super-a2");
        let mut args = vec!["rigidity", "-c", c.as_str()];
        args.extend(extra);
        let (code, report) = json(&args);
        assert_eq!(code, 0);
        assert_eq!(report["results"]["verdict"], "rigid");
    }
}

#[test]
fn zero_entry_is_reported_with_its_field() {
    let path = temp_file("zero.json", r#"{"q_values": [["-1", "0"], ["1", "-1"]]}"#);
    let o = nichols(&["diagram", "-c", &path]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("q_values[0][1]"), "{err}");
}

#[test]
fn unknown_field_is_rejected() {
    let path = temp_file("unknown.json", r#"{"q_values": [["-1"]], "budget": {}}"#);
    let o = nichols(&["nichols", "-c", &path]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_echo_round_trips() {
    let c = config("a2-zeta3");
    let (code, first) = json(&["rewrite", "-c", &c]);
    assert_eq!(code, 0);
    let echo = serde_json::to_string(&first["config_echo"]).unwrap();
    let path = temp_file("echo.json", &echo);
    let (code2, second) = json(&["rewrite", "-c", &path]);
    assert_eq!(code2, 0);
    assert_eq!(first["results"], second["results"]);
    assert_eq!(first["config_echo"], second["config_echo"]);
}

#[test]
fn text_and_json_carry_the_same_values() {
    let cases: Vec<Vec<String>> = vec![
        vec!["roots".into(), "-c".into(), config("standard-b2")],
        vec!["relations".into(), "-c".into(), config("rank3-minus-one-vertex")],
        vec!["cohomology".into(), "-c".into(), config("rank1-zeta4"), "--epsilon".into()],
        vec!["pbw".into(), "--max-degree".into(), "3".into()],
        vec!["twist".into(), "--bicharacter".into(), config("bicharacter-color")],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = stdout(&nichols(&args));
        let (_, report) = json(&args);
        let mut values = Vec::new();
        leaves(&report["results"], &mut values);
        for v in values {
            assert!(text.contains(&v), "`{v}` missing from text output of {args:?}:\n{text}");
        }
    }
}

#[test]
fn incomplete_catalog_exits_with_partial() {
    let path = temp_file("g2.json", r#"{"cyclotomic_order": 4, "q_exponents": [[1, 1], [0, 3]], "budgets": {"max_degree": 7}}"#);
    let (code, report) = json(&["rewrite", "-c", &path]);
    assert_eq!(code, 2);
    assert_eq!(report["results"]["presents_nichols"], false);
    assert!(!report["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn twist_emits_sign_tables() {
    let (code, report) = json(&["twist", "--bicharacter", &config("bicharacter-color")]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["beta_sigma"], serde_json::json!([["-1", "-1"], ["-1", "-1"]]));
    assert_eq!(report["results"]["sigma"][1][0], "zeta6^5");
}

#[test]
fn lie_check_and_pbw_pass() {
    assert_eq!(json(&["lie-check"]).0, 0);
    let (code, report) = json(&["pbw", "--max-degree", "4", "--example", "color-pair"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["examples"][0]["match"], true);
    let o = nichols(&["pbw", "--example", "nonexistent"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn commands_without_config_fail_cleanly() {
    let o = nichols(&["diagram"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("--config"));
}

#[test]
fn fk_rigidity_flag() {
    let (code, report) = json(&["fk", "--n", "3", "--max-degree", "5", "--rigidity"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["rigid"], true);
    assert_eq!(report["results"]["dims"], serde_json::json!([1, 3, 4, 3, 1, 0]));
}

#[test]
fn memory_guard_stops_the_symmetrizer() {
    let path = temp_file("guard.json", r#"{"cyclotomic_order": 3, "q_exponents": [[1, 2], [0, 1]], "budgets": {"memory_guard": 20}}"#);
    let (code, report) = json(&["nichols", "-c", &path, "--max-degree", "6"]);
    assert_eq!(code, 2);
    assert_eq!(report["results"]["dims"], serde_json::json!([1, 2, 4, 4, 5]));
    assert!(report["warnings"][0].as_str().unwrap().contains("memory guard 20"));
}
