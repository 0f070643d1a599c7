use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn quartic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn components_reports_both_conventions() {
    let out = quartic(&["components", "--genus", "-100", "--json"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["result"]["counts"]["inclusive"]["total"], 530);
    assert_eq!(r["result"]["counts"]["strict"]["total"], 529);
    assert_eq!(r["result"]["counts"]["strict"]["four_line"], 377);
    assert_eq!(r["config"]["characteristic"], 32003);
}

#[test]
fn strict_convention_changes_the_table() {
    let inc = report(&quartic(&["components", "--genus", "-100"]));
    let strict = report(&quartic(&["components", "--genus", "-100", "--g8-convention", "strict"]));
    let rows = |v: &Value| v["result"]["components"].as_array().unwrap().len();
    assert_eq!(rows(&inc), rows(&strict) + 1);
}

#[test]
fn thintothick_certificate_passes() {
    let out = quartic(&["verify", "thintothick", "-a", "1", "-b", "0", "-c", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["result"]["fiber_invariants"][0]["genus"], -10);
}

#[test]
fn spectrum_of_built_extremal_curve() {
    let dir = tempfile::tempdir().unwrap();
    let built = report(&quartic(&["build", "extremal", "--genus", "-5"]));
    let file = write(dir.path(), "extremal_g-5.ideal", built["result"]["file"].as_str().unwrap());
    let r = report(&quartic(&["spectrum", "--file", &file]));
    assert_eq!(r["result"]["spectrum"], "{-5, 0, 1, 2}");
    assert_eq!(r["result"]["class"], "extremal");
}

#[test]
fn double_line_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "d.ideal", "ring: x y z w\nideal:\nx^2\nx*y\ny^2\nx*w-y*z\n");
    let out = quartic(&["cohomology", "--file", &file, "--window", "-3:4"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!((r["result"]["degree"].as_i64(), r["result"]["genus"].as_i64()), (Some(2), Some(-1)));
    assert_eq!(r["result"]["rows"].as_array().unwrap().len(), 8);
    let csv = quartic(&["cohomology", "--file", &file, "--csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("n,h0_ideal"));
}

#[test]
fn bad_inputs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "a.ideal", "ideal: x*^2\n");
    let out = quartic(&["spectrum", "--file", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    let nonprime = write(dir.path(), "b.ideal", "char: 4\nideal: x\n");
    assert_eq!(quartic(&["spectrum", "--file", &nonprime]).status.code(), Some(2));
    assert_eq!(quartic(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(quartic(&["verify", "extend", "-a", "1"]).status.code(), Some(2));
    assert_eq!(quartic(&["facts", "--genus", "1", "--char", "4"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_content_addressed() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    let args = ["verify", "extend", "-a", "1", "-b", "1", "--out", store.to_str().unwrap()];
    let first = quartic(&args);
    let second = quartic(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let files: Vec<_> = fs::read_dir(&store).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let stem = files[0].file_stem().unwrap().to_str().unwrap().to_string();
    assert_eq!(stem.len(), 64);
    assert_eq!(fs::read(&files[0]).unwrap(), first.stdout);
}

#[test]
fn connectedness_small_genus() {
    let dir = tempfile::tempdir().unwrap();
    let out = quartic(&["certify-connectedness", "--genus", "-9", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["result"]["connected"], true);
    let edges = r["result"]["edges"].as_array().unwrap();
    assert!(edges.iter().any(|e| e["from"] == "G11,1,0" && e["to"] == "G4"));
    assert!(fs::read_dir(dir.path().join("certificates")).unwrap().count() > 0);
}

#[test]
fn quadric_spot_check_reports_the_g3_witness() {
    let out = quartic(&["verify", "quadrics", "--genus", "-3"]);
    assert_eq!(out.status.code(), Some(1));
    let rows = report(&out)["result"]["rows"].as_array().unwrap().clone();
    let failed: Vec<&str> = rows.iter().filter(|r| r["status"] == "fail").map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(failed, ["G3"]);
}

#[test]
fn corpus_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = quartic(&["build", "corpus", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let manifest: Value = serde_json::from_slice(&fs::read(dir.path().join("corpus/manifest.json")).unwrap()).unwrap();
    for row in manifest.as_array().unwrap() {
        assert!(dir.path().join("corpus").join(row["path"].as_str().unwrap()).exists());
    }
}
