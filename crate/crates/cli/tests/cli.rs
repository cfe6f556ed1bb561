use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn folia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folia")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn statuses(report: &Value, status: &str) -> Vec<String> {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["status"] == status)
        .map(|v| v["check"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&folia(&["pencil-check", "--partition", "4,1"])), 2);
    assert_eq!(code(&folia(&["components-lb", "3"])), 2);
    assert_eq!(code(&folia(&["pencil-check", "--partition", "5,x"])), 2);
    assert_eq!(code(&folia(&["no-such-command"])), 2);
    assert_eq!(code(&folia(&["root-bounds", "--format", "yaml"])), 2);
}

#[test]
fn components_examples() {
    let o = folia(&["components-lb", "13", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["results"]["rows"][0]["bound"]["partitions"], "30");
    assert_eq!(r["results"]["rows"][0]["bound"]["holds"], true);
    let o = folia(&["components-lb", "8", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("8,4,5,"));
}

#[test]
fn pencil_reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let args = ["pencil-check", "--partition", "5,1", "--samples", "6", "--seed", "42", "--format", "json"];
    let a = folia(&args);
    let mut with_out = args.to_vec();
    let out_s = out.display().to_string();
    with_out.extend(["--out", &out_s]);
    let b = folia(&with_out);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
    let r = json(&a);
    assert_eq!(r["inputs"]["seed"], 42);
    assert!(r["results"]["members"].as_array().unwrap().iter().all(|m| m["dim"].as_i64().unwrap() <= 1));
    let c = folia(&["pencil-check", "--partition", "5,1", "--samples", "6", "--seed", "7", "--format", "json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn pencil_on_five_has_isolated_points() {
    let r = json(&folia(&["pencil-check", "--partition", "5", "--format", "json"]));
    assert!(r["results"]["members"].as_array().unwrap().iter().all(|m| m["dim"] == 0));
    assert_eq!(r["pass"], true);
}

#[test]
fn root_bounds_warns_without_failing() {
    let o = folia(&["root-bounds", "--rank-cap", "8", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(statuses(&r, "warn"), ["E6 min_semisimple_complement", "E8 nilp_bound", "G2 min_semisimple_complement"]);
    assert!(statuses(&r, "fail").is_empty());
    let csv = String::from_utf8(folia(&["root-bounds", "--rank-cap", "3", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "type,rank,roots,h,h_dual,ss_bound,nilp_bound,pencil_bound,eligible");
    assert!(csv.contains("C,3,18,6,4,"));
    assert!(csv.lines().filter(|l| l.ends_with("false")).count() == 6);
}

#[test]
fn counterexample_passes() {
    let o = folia(&["counterexample", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!(statuses(&r, "fail").is_empty());
    let fitting = r["results"]["fitting"].as_array().unwrap();
    let q_v1 = fitting.iter().find(|f| f["module"] == "Q_V" && f["index"] == 1).unwrap();
    assert_eq!(q_v1["equal"], true);
    assert_eq!(q_v1["computed"].as_array().unwrap().len(), 6);
}

const J32: &str = r#"[["0","1","0","0","0"],["0","0","1","0","0"],["0","0","0","0","0"],["0","0","0","0","1"],["0","0","0","0","0"]]"#;
const H32: &str = r#"[[2,0,0,0,0],[0,0,0,0,0],[0,0,-2,0,0],[0,0,0,1,0],[0,0,0,0,-1]]"#;

#[test]
fn orbit_command() {
    let dir = tempfile::tempdir().unwrap();
    let pair = write(dir.path(), "pair.json", &format!(r#"{{"matrices": [{J32}, {H32}]}}"#));
    let r = json(&folia(&["orbit", &pair, "--format", "json"]));
    assert_eq!(r["results"]["orbit"], serde_json::json!([3, 2]));
    assert_eq!(r["results"]["abelian"], false);

    let toral = write(dir.path(), "toral.json", "[[[1,0,0],[0,-1,0],[0,0,0]], [[0,0,0],[0,1,0],[0,0,-1]]]");
    let r = json(&folia(&["orbit", &toral, "--format", "json"]));
    assert_eq!(r["results"]["orbit"], "zero");

    let escape = write(dir.path(), "escape.json", "[[[0,1,0],[0,0,0],[0,0,0]], [[0,0,0],[0,0,1],[0,0,0]]]");
    let o = folia(&["orbit", &escape]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("subalgebra"));

    let traced = write(dir.path(), "trace.json", "[[[1,0],[0,0]], [[0,1],[0,0]]]");
    assert_eq!(code(&folia(&["orbit", &traced])), 2);
}

#[test]
fn cohomology_command() {
    let r = json(&folia(&["cohomology", "--partition", "3,2", "--format", "json"]));
    assert_eq!(r["pass"], true);
    assert_eq!(r["results"]["h1"], r["results"]["invariants"]);
    assert_eq!(code(&folia(&["cohomology"])), 2);
    assert_eq!(code(&folia(&["cohomology", "--partition", "1,1"])), 2);
}

#[test]
fn forms_check_command() {
    let dir = tempfile::tempdir().unwrap();
    let closed = write(
        dir.path(),
        "closed.json",
        r#"{"parameters": ["t"], "coordinates": ["x", "y", "z"], "degree": 1,
            "terms": [{"indices": [0], "coeff": "y"}, {"indices": [1], "coeff": "x"}, {"indices": [2], "coeff": "t"}]}"#,
    );
    let o = folia(&["forms-check", &closed, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["results"]["closed"], true);
    assert_eq!(r["results"]["singular_ideal"], serde_json::json!(["t", "x", "y"]));

    let contact = write(
        dir.path(),
        "contact.json",
        r#"{"coordinates": ["x", "y", "z"], "degree": 1,
            "terms": [{"indices": [0], "coeff": "-y"}, {"indices": [2], "coeff": "1"}]}"#,
    );
    let o = folia(&["forms-check", &contact, "--format", "json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(statuses(&json(&o), "fail"), ["kernel involutive"]);

    let symplectic = write(
        dir.path(),
        "symplectic.json",
        r#"{"coordinates": ["x", "y", "z", "w"], "degree": 2,
            "terms": [{"indices": [0, 1], "coeff": "1"}, {"indices": [2, 3], "coeff": "1"}]}"#,
    );
    let o = folia(&["forms-check", &symplectic, "--format", "json"]);
    assert_eq!(code(&o), 1);
    assert!(statuses(&json(&o), "fail").contains(&"locally decomposable".to_string()));

    let missing = dir.path().join("missing.json").display().to_string();
    assert_eq!(code(&folia(&["forms-check", &missing])), 2);
}

#[test]
fn threads_flag_is_accepted() {
    let o = folia(&["--threads", "2", "pencil-check", "--partition", "5,2", "--samples", "3"]);
    assert_eq!(code(&o), 0);
}
