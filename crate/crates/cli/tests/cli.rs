use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bs")).args(args).env_remove("BS_STATE_BUDGET").output().expect("bs runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn gens_file(dir: &Path, text: &str) -> String {
    let path = dir.join("gens.txt");
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn word_commands() {
    let out = bs(&["normalize", "--m", "3", "--n", "2", "--word", "x^2y"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"blocks":[0],"tail":3}"#);
    assert_eq!(json(&bs(&["equal", "--m", "3", "--n", "2", "xy", "yx"]))["equal"], false);
    assert_eq!(json(&bs(&["equal", "--m", "3", "--n", "2", "yx^3", "x^2y"]))["equal"], true);
    assert_eq!(json(&bs(&["group-equal", "--m", "3", "--n", "2", "yx^3", "x^2y"]))["equal"], true);
    assert_eq!(json(&bs(&["group-equal", "--m", "3", "--n", "2", "xX", "yY"]))["equal"], true);
    let product = json(&bs(&["multiply", "--m", "3", "--n", "2", "y", "x^3"]));
    assert_eq!(product, json(&bs(&["normalize", "--m", "3", "--n", "2", "--word", "x^2y"])));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(code(&bs(&["normalize", "--m", "3", "--n", "2", "--word", "xz"])), 2);
    assert_eq!(code(&bs(&["normalize", "--m", "0", "--n", "2", "--word", "x"])), 2);
    assert_eq!(code(&bs(&["counterexample", "--bogus"])), 2);
    assert_eq!(code(&bs(&["verify", "/nonexistent/structure.json"])), 2);
}

#[test]
fn embed_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let out = bs(&["embed", "--m", "3", "--n", "2", "--path", "xyxyy", "--svg", svg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let first = std::fs::read_to_string(&svg).unwrap();
    assert!(first.starts_with("<svg"));
    bs(&["embed", "--m", "3", "--n", "2", "--path", "xyxyy", "--svg", svg.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&svg).unwrap(), first);

    let coords = json(&bs(&["embed", "--m", "3", "--n", "2", "--path", "yxxx", "--path", "xxy"]));
    let paths = coords["paths"].as_array().unwrap();
    assert_eq!(paths.len(), 2);
    assert_eq!(paths[0]["end"], paths[1]["end"]);
    assert_eq!(paths[0]["points"].as_array().unwrap().last(), Some(&paths[0]["end"]));

    assert_eq!(code(&bs(&["embed", "--m", "2", "--n", "3", "--path", "xy"])), 2);
}

#[test]
fn synth_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let gens = gens_file(dir.path(), "# full semigroup\nx\ny\n");
    let structure = dir.path().join("s.json");
    let dots = dir.path().join("dot");
    let out = bs(&[
        "synth", "--m", "3", "--n", "2", "--gens", &gens, "--out", structure.to_str().unwrap(),
        "--verify-bound", "6", "--dot-dir", dots.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["handedness"], "right");
    assert!(dots.join("language.dot").exists());
    assert!(dots.join("multiplier_epsilon.dot").exists());

    let path = structure.to_str().unwrap();
    let report = bs(&["verify", path, "--bound", "6"]);
    assert_eq!(code(&report), 0);
    assert_eq!(json(&report)["holds"], true);
    let deeper = json(&bs(&["verify", path, "--bound", "7"]));
    assert!(deeper["pairs_checked"].as_u64() > json(&report)["pairs_checked"].as_u64());

    // Dropping the accepting states of the `b` multiplier loses every product by `b`.
    let mut s: Value = serde_json::from_str(&std::fs::read_to_string(&structure).unwrap()).unwrap();
    s["multipliers"]["b"]["accepting"] = Value::Array(Vec::new());
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, s.to_string()).unwrap();
    let out = bs(&["verify", tampered.to_str().unwrap(), "--bound", "5"]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["holds"], false);
    assert!(!report["completeness_failures"].as_array().unwrap().is_empty());

    std::fs::write(&tampered, "{\"m\": 3}").unwrap();
    assert_eq!(code(&bs(&["verify", tampered.to_str().unwrap()])), 2);
}

#[test]
fn synth_handedness_and_refusals() {
    let dir = tempfile::tempdir().unwrap();
    let gens = gens_file(dir.path(), "x\ny\n");
    let structure = dir.path().join("s.json");
    let out = bs(&["synth", "--m", "2", "--n", "3", "--gens", &gens, "--out", structure.to_str().unwrap(), "--verify-bound", "6"]);
    assert_eq!(code(&out), 0);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&structure).unwrap()).unwrap();
    assert_eq!(s["handedness"], "left");

    let out = bs(&["synth", "--m", "2", "--n", "2", "--gens", &gens, "--out", structure.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("m = n"));

    // Too small a range of lambda to verify.
    let out = bs(&[
        "synth", "--m", "2", "--n", "3", "--gens", &gens, "--out", structure.to_str().unwrap(),
        "--lambda-start", "1", "--lambda-max", "1",
    ]);
    assert_eq!(code(&out), 1);

    let out = bs(&["--budget", "3", "synth", "--m", "3", "--n", "2", "--gens", &gens, "--out", structure.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn budget_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let gens = gens_file(dir.path(), "x\ny\n");
    let out_path = dir.path().join("s.json");
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_bs"))
            .args(["synth", "--m", "3", "--n", "2", "--gens", &gens, "--out", out_path.to_str().unwrap()])
            .env("BS_STATE_BUDGET", value)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("3")), 3);
    assert_eq!(code(&run("lots")), 2);
}

#[test]
fn counterexample_report() {
    let out = bs(&["counterexample", "--alpha-max", "2", "--search-bound", "6"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["passed"], true);
    let rows = report["uniqueness"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["found"].as_array().unwrap().len() == 1));
    assert!(rows.iter().any(|r| r["expected"] == "abbcdd"));
    assert_eq!(report["identity_family"].as_array().unwrap().len(), 3);
    // Identical invocations give identical bytes.
    assert_eq!(bs(&["counterexample", "--alpha-max", "2"]).stdout, bs(&["counterexample", "--alpha-max", "2"]).stdout);
}
