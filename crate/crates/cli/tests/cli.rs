use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tenseig"));
    c.env_remove("TENSEIG_RESTARTS");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const IDENTITY: &str = r#"{"shape": [2, 2], "entries": [1, 0, 0, 1]}"#;
const CUBIC: &str = r#"{"shape": [2, 2, 2], "entries": [1, 0, 0, 0, 0, 0, 0, 1]}"#;
const DIAG12: &str = r#"{"shape": [2, 2], "entries": [1, 0, 0, 2]}"#;

#[test]
fn eval_examples() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", IDENTITY);
    let e1 = write(&dir, "e1.json", "[1, 0]");
    let out = run(&["eval", p(&id), p(&e1), p(&e1)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1.0000000000000000e0");

    let ones = write(&dir, "ones.json", r#"{"shape": [2, 2, 2], "entries": [1, 1, 1, 1, 1, 1, 1, 1]}"#);
    let one = write(&dir, "one.json", r#"{"shape": [2], "entries": [1, 1]}"#);
    let out = run(&["eval", p(&ones), p(&one), p(&one), p(&one)]);
    assert_eq!(stdout(&out).trim(), "8.0000000000000000e0");

    let short = write(&dir, "short.json", "[1, 0, 0]");
    assert_eq!(code(&run(&["eval", p(&id), p(&e1), p(&short)])), 2);
    assert_eq!(code(&run(&["eval", p(&id), p(&e1)])), 2);
}

#[test]
fn eig_cubic_audit_is_consistent() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "cubic.json", CUBIC);
    let out = run(&["eig", p(&t), "--symmetric", "--audit", "--restarts", "50"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["pairs"].as_array().unwrap().len(), 6);
    assert_eq!(r["morse"]["consistent"], true);
    assert_eq!(r["morse"]["histogram"]["0"], 3);
    assert_eq!(r["morse"]["histogram"]["1"], 3);
    assert_eq!(r["oracle"]["agree"], true);
}

#[test]
fn eig_identity_is_degenerate() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "id.json", IDENTITY);
    let out = run(&["eig", p(&t), "--symmetric"]);
    assert_eq!(code(&out), 4);
    assert_eq!(report(&out)["status"], "degenerate");
}

#[test]
fn eig_diagonal_values() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "d.json", DIAG12);
    let out = run(&["eig", p(&t), "--symmetric", "--restarts", "30"]);
    assert_eq!(code(&out), 0);
    let values: Vec<f64> =
        report(&out)["pairs"].as_array().unwrap().iter().map(|x| x["value"].as_f64().unwrap()).collect();
    assert_eq!(values.len(), 4);
    for (got, want) in values.iter().zip([2.0, 2.0, 1.0, 1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn eig_audit_violation_exit_code() {
    let dir = TempDir::new().unwrap();
    let gen = dir.path().join("g.json");
    assert_eq!(code(&run(&["gen", "--shape", "2,2,2", "--seed", "7", "--symmetric", "--out", p(&gen)])), 0);
    // Three restarts find five of the six critical points: parity is off by one.
    let out = run(&["eig", p(&gen), "--symmetric", "--audit", "--restarts", "3"]);
    assert_eq!(code(&out), 3);
    let r = report(&out);
    assert_eq!(r["status"], "audit_violation");
    assert_eq!(r["morse"]["parity_ok"], false);
}

#[test]
fn eig_usage_errors() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "d.json", DIAG12);
    assert_eq!(code(&run(&["eig", p(&t), "--mode", "1", "--audit"])), 2);
    assert_eq!(code(&run(&["eig", p(&t), "--mode", "1", "--symmetric"])), 2);
    assert_eq!(code(&run(&["eig", p(&t)])), 2);
    assert_eq!(code(&run(&["eig", p(&t), "--mode", "0"])), 2);
    assert_eq!(code(&run(&["eig", p(&t), "--mode", "3"])), 2);
    assert_eq!(code(&run(&["eig", p(&t), "--symmetric", "--audit", "--p", "3"])), 2);
    assert_eq!(code(&run(&["eig", p(&t), "--symmetric", "--p", "1"])), 2);
    let rect = write(&dir, "r.json", r#"{"shape": [2, 3], "entries": [1, 2, 3, 4, 5, 6]}"#);
    assert_eq!(code(&run(&["eig", p(&rect), "--mode", "1"])), 2);
    let asym = write(&dir, "a.json", r#"{"shape": [2, 2], "entries": [1, 2, 0, 1]}"#);
    assert_eq!(code(&run(&["eig", p(&asym), "--symmetric"])), 2);
    assert_eq!(code(&run(&["eig", "/nonexistent/t.json", "--symmetric"])), 2);
}

#[test]
fn eig_mode_report() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "tri.json", r#"{"shape": [2, 2], "entries": [1, 1, 0, 2]}"#);
    let out = run(&["eig", p(&t), "--mode", "2", "--restarts", "20"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["config"]["mode"], 2);
    assert!(r["pairs"].as_array().unwrap().iter().all(|x| x["mode"] == 2));
}

#[test]
fn svd_examples() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", r#"{"shape": [2, 2], "entries": [3, 0, 0, 1]}"#);
    let out = run(&["svd", p(&d), "--restarts", "30"]);
    assert_eq!(code(&out), 0);
    let sigmas: Vec<f64> =
        report(&out)["tuples"].as_array().unwrap().iter().map(|x| x["sigma"].as_f64().unwrap()).collect();
    assert!(sigmas.iter().any(|s| (s - 3.0).abs() < 1e-10));
    assert!(sigmas.iter().any(|s| (s - 1.0).abs() < 1e-10));

    let ones = write(&dir, "ones.json", r#"{"shape": [2, 2], "entries": [1, 1, 1, 1]}"#);
    let r = report(&run(&["svd", p(&ones), "--restarts", "30"]));
    let tuples = r["tuples"].as_array().unwrap();
    assert!((tuples[0]["sigma"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    assert!(tuples.iter().any(|x| x["degenerate"] == true));

    let cube = write(&dir, "cube.json", r#"{"shape": [2, 2, 2], "entries": [1, 1, 1, 1, 1, 1, 1, 1]}"#);
    let r = report(&run(&["svd", p(&cube), "--restarts", "30"]));
    assert!((r["tuples"][0]["sigma"].as_f64().unwrap() - 2f64.powf(1.5)).abs() < 1e-10);

    let bad = write(&dir, "bad.json", "{\"shape\": [2, 2], \"entries\": [1, 2");
    assert_eq!(code(&run(&["svd", p(&bad)])), 2);
    let vector = write(&dir, "v.json", r#"{"shape": [2], "entries": [1, 2]}"#);
    assert_eq!(code(&run(&["svd", p(&vector)])), 2);
}

#[test]
fn reports_are_reproducible_modulo_timings() {
    let dir = TempDir::new().unwrap();
    let gen = dir.path().join("g.json");
    run(&["gen", "--shape", "3,3,3", "--seed", "4", "--symmetric", "--out", p(&gen)]);
    for args in [
        vec!["eig", p(&gen), "--symmetric", "--audit", "--seed", "9", "--restarts", "40"],
        vec!["svd", p(&gen), "--seed", "9", "--restarts", "40"],
    ] {
        let mut a = report(&run(&args));
        let mut b = report(&run(&args));
        a.as_object_mut().unwrap().remove("timings");
        b.as_object_mut().unwrap().remove("timings");
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn restart_override_from_environment_is_echoed() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "d.json", DIAG12);
    let out = bin().args(["eig", p(&t), "--symmetric"]).env("TENSEIG_RESTARTS", "17").output().unwrap();
    let r = report(&out);
    assert_eq!(r["config"]["restarts"], 17);
    assert_eq!(r["config"]["restarts_source"], "env:TENSEIG_RESTARTS");

    let out =
        bin().args(["eig", p(&t), "--symmetric", "--restarts", "5"]).env("TENSEIG_RESTARTS", "17").output().unwrap();
    assert_eq!(report(&out)["config"]["restarts_source"], "flag");

    let out = bin().args(["eig", p(&t), "--symmetric"]).env("TENSEIG_RESTARTS", "many").output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn gen_is_deterministic_and_validates() {
    let a = run(&["gen", "--shape", "2,2,2", "--seed", "7"]);
    let b = run(&["gen", "--shape", "2,2,2", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, run(&["gen", "--shape", "2,2,2", "--seed", "8"]).stdout);

    assert_eq!(code(&run(&["gen", "--shape", "2,3", "--symmetric"])), 2);
    assert_eq!(code(&run(&["gen", "--shape", "2,x"])), 2);
    assert_eq!(code(&run(&["gen", "--shape", "2,0"])), 2);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.json");
    run(&["gen", "--shape", "3,3,3", "--symmetric", "--seed", "1", "--out", p(&out)]);
    let t = tenseig::io::read_tensor(&out).unwrap().0;
    assert!(t.symmetry().unwrap().is_exactly_symmetric());
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let sym = dir.path().join("s.json");
    run(&["gen", "--shape", "3,3,3", "--symmetric", "--seed", "2", "--out", p(&sym)]);
    let out = run(&["check", p(&sym), "--seed", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");

    let asym = dir.path().join("a.json");
    run(&["gen", "--shape", "3,3,3", "--seed", "2", "--out", p(&asym)]);
    let out = run(&["check", p(&asym)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l.starts_with("SKIP euler")));

    let rect = dir.path().join("r.json");
    run(&["gen", "--shape", "2,4,3", "--seed", "2", "--out", p(&rect)]);
    assert_eq!(code(&run(&["check", p(&rect)])), 0);

    let bad = write(&dir, "bad.json", r#"{"shape": [2], "entries": [1e999, 0]}"#);
    assert_eq!(code(&run(&["check", p(&bad)])), 2);
    let nan = write(&dir, "nan.json", r#"{"shape": [2], "entries": [NaN, 0]}"#);
    assert_eq!(code(&run(&["check", p(&nan)])), 2);
}
