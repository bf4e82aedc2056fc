use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dgq_core::presentation::polynomial_presentation;
use dgq_core::CheckReport;
use serde_json::Value;
use tempfile::TempDir;

fn dgq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgq")).args(args).output().expect("binary runs")
}

fn dgq_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgq")).args(args).env(key, value).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

fn read(p: &str) -> String {
    std::fs::read_to_string(Path::new(p)).unwrap()
}

#[test]
fn z2_example_has_seven_loops() {
    let out = dgq(&["model-mckay", "--m", "2", "--weights", "1,1,1,1", "--delete-zero", "--verify", "dsq"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["quiver"]["vertices"], serde_json::json!([1]));
    let arrows = v["quiver"]["arrows"].as_array().unwrap();
    assert_eq!(arrows.len(), 7);
    assert!(arrows.iter().all(|a| a["source"] == 1 && a["target"] == 1));
    assert_eq!(v["differential"]["x1:1234:1"].as_array().unwrap().len(), 6);
}

#[test]
fn hypothesis_warnings_and_strict_mode() {
    let out = dgq(&["model-mckay", "--m", "4", "--weights", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let out = dgq(&["model-mckay", "--m", "4", "--weights", "1,2", "--strict"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dgq(&["model-mckay", "--m", "2", "--weights", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conifold_cohomology() {
    let dir = TempDir::new().unwrap();
    let model = path(&dir, "g0.json");
    let out = dgq(&[
        "ginzburg",
        "--quiver",
        &data("conifold.quiver.json"),
        "--potential",
        &data("conifold.potential.json"),
        "--delete-vertex",
        "0",
        "--verify",
        "dsq,grading",
        "--out",
        &model,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = dgq(&["cohomology", "--model", &model, "--hmin", "-6", "--adams-max", "12", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let mut totals = [0u64; 7];
    for e in v["entries"].as_array().unwrap() {
        totals[(-e["h"].as_i64().unwrap()) as usize] += e["dim"].as_u64().unwrap();
    }
    assert_eq!(totals, [1, 0, 1, 0, 1, 0, 1]);
}

#[test]
fn full_conifold_passes_checks() {
    let dir = TempDir::new().unwrap();
    let report = path(&dir, "report.json");
    let out = dgq(&[
        "ginzburg",
        "--quiver",
        &data("conifold.quiver.json"),
        "--potential",
        &data("conifold.potential.json"),
        "--verify",
        "dsq",
        "--report",
        &report,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&read(&report)).unwrap();
    assert_eq!(v["checks"][0]["status"], "pass");
}

#[test]
fn resource_cap_exit_code() {
    let dir = TempDir::new().unwrap();
    let model = path(&dir, "p3.json");
    assert_eq!(dgq(&["model-poly", "--n", "3", "--out", &model]).status.code(), Some(0));
    let out = dgq_env(&["cohomology", "--model", &model, "--hmin", "-3", "--adams-max", "5"], "DGQ_PATH_CAP", "5");
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let out = dgq_env(&["cohomology", "--model", &model, "--hmin", "-3", "--adams-max", "5"], "DGQ_PATH_CAP", "lots");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exit_code() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(dgq(&["verify", "--model", &bad]).status.code(), Some(2));
    assert_eq!(dgq(&["verify", "--model", &path(&dir, "missing.json")]).status.code(), Some(2));
    assert_eq!(dgq(&["model-poly", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn failing_check_exit_code_and_witness() {
    let dir = TempDir::new().unwrap();
    let model = path(&dir, "broken.json");
    // d a = b b, d c = a b, so d d c = b b b
    let text = r#"{
      "provenance": "general",
      "quiver": {
        "vertices": [0],
        "arrows": [
          { "id": "a", "source": 0, "target": 0, "hdeg": -1, "adeg": 2 },
          { "id": "b", "source": 0, "target": 0, "hdeg": 0, "adeg": 1 },
          { "id": "c", "source": 0, "target": 0, "hdeg": -2, "adeg": 3 }
        ]
      },
      "differential": {
        "a": [{ "path": ["b", "b"], "start": 0, "coeff": "1" }],
        "c": [{ "path": ["a", "b"], "start": 0, "coeff": "1" }]
      }
    }"#;
    std::fs::write(&model, text).unwrap();
    let out = dgq(&["verify", "--model", &model, "--checks", "dsq"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["checks"][0]["status"], "fail");
    assert_eq!(v["checks"][0]["witness"]["arrow"], "c");
}

#[test]
fn model_files_round_trip_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    let first = path(&dir, "a.json");
    let second = path(&dir, "b.json");
    let args = ["model-mckay", "--m", "3", "--weights", "1,1,1", "--delete-zero"];
    assert_eq!(dgq(&[&args[..], &["--out", &first]].concat()).status.code(), Some(0));
    assert_eq!(dgq(&[&args[..], &["--out", &second]].concat()).status.code(), Some(0));
    assert_eq!(read(&first), read(&second));

    let file: dgq_core::koszul::ModelFile = serde_json::from_str(&read(&first)).unwrap();
    let model = dgq_core::MinimalModel::try_from(file).unwrap();
    let mut again = serde_json::to_string_pretty(&dgq_core::koszul::ModelFile::from(&model)).unwrap();
    again.push('\n');
    assert_eq!(again, read(&first));
}

#[test]
fn reports_round_trip_byte_for_byte() {
    let out = dgq(&["cy-check", "--m", "3", "--weights", "1,1,1", "--adams-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let report: dgq_core::cy::CyReport = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&report).unwrap();
    again.push('\n');
    assert_eq!(again, text);
    let v: Value = serde_json::from_str(&text).unwrap();
    for key in ["closure", "koszul_truncated", "omega"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["degree", "closed", "nondegenerate"] {
        assert_eq!(v["omega"][key]["status"], "pass");
    }
    let r: CheckReport = serde_json::from_value(v["closure"].clone()).unwrap();
    assert!(r.passed());
}

#[test]
fn cy_check_refuses_bad_weight_sum() {
    let out = dgq(&["cy-check", "--m", "2", "--weights", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sum(weights) = m fails"));
}

#[test]
fn compare_h0_against_presentation_files() {
    let dir = TempDir::new().unwrap();
    let model = path(&dir, "p2.json");
    assert_eq!(dgq(&["model-poly", "--n", "2", "--out", &model]).status.code(), Some(0));

    let poly = path(&dir, "poly.json");
    std::fs::write(&poly, serde_json::to_string(polynomial_presentation(2).as_presented()).unwrap()).unwrap();
    let out = dgq(&["compare-h0", "--model", &model, "--presentation", &poly, "--adams-max", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let free = path(&dir, "free.json");
    let free_algebra = polynomial_presentation(2).as_presented().without_relator(0);
    std::fs::write(&free, serde_json::to_string(&free_algebra).unwrap()).unwrap();
    let out = dgq(&["compare-h0", "--model", &model, "--presentation", &free]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"]["kind"], "dimension");

    let map = path(&dir, "map.json");
    std::fs::write(&map, r#"{"x1": "x2", "x2": "x1"}"#).unwrap();
    let out = dgq(&["compare-h0", "--model", &model, "--presentation", &poly, "--map", &map]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn table_output_and_threads() {
    let out = dgq(&["--threads", "1", "model-poly", "--n", "2", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("vertices: [0]"));
    assert!(text.lines().any(|l| l.starts_with("x12\t")));
}
