use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SEMICIRCLE: &str = r#"{
  "dual_semigroup": {"generators": ["x"], "comul": "primitive"},
  "functionals": {"psi": {"degree": 4, "moments": {"x x": "1"}}}
}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn uniprod(args: &[&str], file: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_uniprod"));
    cmd.args(args).env_remove("UNIPROD_THREADS");
    if let Some(f) = file {
        cmd.arg(f);
    }
    cmd.output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn exact(v: &Value) -> &str {
    v["exact"][0].as_str().unwrap()
}

#[test]
fn exp_of_semicircle_generator() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "semi.json", SEMICIRCLE);
    let out = uniprod(&["exp", "--product", "free", "--degree", "4"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(exact(&r["results"]["table"]["x x x x"]), "2+0i");
    assert_eq!(exact(&r["results"]["table"]["x x"]), "1+0i");
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["verdicts"][0]["passed"], Value::Bool(true));
}

#[test]
fn sigma_golden_tensor() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "ab.json", r#"{"factors": [{"generators": ["a1", "a2"]}, {"generators": ["b1", "b2"]}]}"#);
    let out = uniprod(&["sigma", "--product", "free", "--word", "a1 b1 a2 b2"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["sigma"], "(a1·a2) ⊗ b1 b2 + a1 a2 ⊗ (b1·b2) - (a1·a2) ⊗ (b1·b2)");
}

#[test]
fn eval_product_convolve_and_exp_poly() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "pair.json",
        r#"{"product": "free",
            "functionals": {"left": {"degree": 2, "moments": {"x": "1", "x x": "2"}},
                            "right": {"degree": 2, "moments": {"x": "1/2+i", "x x": 3}},
                            "psi": {"degree": 4, "moments": {"x x": "1"}}}}"#,
    );
    // φ₁⊙φ₂(x@1 x@2) = φ₁(x)φ₂(x)
    let out = uniprod(&["eval-product", "--word", "x@1 x@2"], Some(&spec));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["results"]["value"]["exact"][0], "1/2+1i");
    // primitive Λ: (φ₁⋆φ₂)(x) = φ₁(x) + φ₂(x)
    let out = uniprod(&["convolve"], Some(&spec));
    assert_eq!(exact(&report(&out)["results"]["table"]["x"]), "3/2+1i");
    let out = uniprod(&["exp-poly", "--word", "x x x x"], Some(&spec));
    assert_eq!(report(&out)["results"]["polynomials"]["x x x x"][0]["polynomial"], "2 t^2");
}

#[test]
fn trotter_and_schoenberg() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "semi.json", SEMICIRCLE);
    let out = uniprod(&["trotter", "--product", "free", "--steps", "1,2,4"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let runs = r["results"]["runs"].as_array().unwrap();
    assert_eq!(runs[2]["deviation"]["x x x x"]["exact"], "1/4");

    let out = uniprod(&["schoenberg", "--product", "all", "--times", "1/10,1,10"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["runs"].as_array().unwrap().len(), 5);
    assert_eq!(r["parameters"]["skipped"], serde_json::json!(["cfree"]));

    let out = uniprod(&["schoenberg", "--product", "boolean", "--samples", "3", "--rep-dim", "3", "--seed", "5"], None);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failing_verdicts_exit_one_with_witness() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "state.json", r#"{"functionals": {"phi": {"degree": 2, "moments": {"x": "1"}}}}"#);
    let out = uniprod(&["check-state"], Some(&spec));
    assert_eq!(out.status.code(), Some(1));
    let w = &report(&out)["verdicts"][0]["witness"];
    assert_eq!(w["vector"], serde_json::json!(["-1+0i", "1+0i"]));
    assert_eq!(w["value"], "-1");

    let spec = write(
        &dir,
        "gen.json",
        r#"{"dual_semigroup": {"generators": ["y", "z"], "star": {"y": "z"}},
            "functionals": {"psi": {"degree": 2, "moments": {"y": "1"}}}}"#,
    );
    for cmd in ["check-generator", "schoenberg"] {
        let out = uniprod(&[cmd, "--product", "free"], Some(&spec));
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        assert_eq!(report(&out)["verdicts"][0]["witness"]["kind"], "hermitian", "{cmd}");
    }

    let spec = write(&dir, "quad.json", r#"{"dual_semigroup": {"generators": ["v"], "comul": {"v": {"v@1": 1, "v@2": 1, "v@1 v@2": 1}}}}"#);
    let out = uniprod(&["check-axioms", "--product", "tensor", "--trials", "5"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two_with_pointer() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"functionals": {"psi": {"moments": {"x q": "1"}}}}"#);
    let out = uniprod(&["exp", "--product", "free"], Some(&bad));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(r#"functionals.psi.moments["x q"]"#));

    let semi = write(&dir, "semi.json", SEMICIRCLE);
    assert_eq!(uniprod(&["exp", "--product", "bogus"], Some(&semi)).status.code(), Some(2));
    assert_eq!(uniprod(&["exp"], Some(&semi)).status.code(), Some(2));
    assert_eq!(uniprod(&["exp", "--product", "free"], Some(&dir.path().join("missing.json"))).status.code(), Some(2));
    assert_eq!(uniprod(&["no-such-command"], None).status.code(), Some(2));

    // the quadratic rule is not graded, so exponentials are refused
    let quad = write(&dir, "quad.json", r#"{"dual_semigroup": {"generators": ["v"], "comul": {"v": {"v@1": 1, "v@2": 1, "v@1 v@2": 1}}},
        "functionals": {"psi": {"moments": {"v v": 1}}}}"#);
    let out = uniprod(&["exp", "--product", "free"], Some(&quad));
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_uniprod")).args(["selftest"]).env("UNIPROD_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_uniprod"))
            .args(["schoenberg", "--product", "all", "--seed", "3", "--samples", "2"])
            .env("UNIPROD_THREADS", threads)
            .output()
            .unwrap();
        let mut v = report(&out);
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn json_out_and_selftest() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("self.json");
    let out = uniprod(&["selftest", "--json-out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["passed"], Value::Bool(true));
    assert!(r["verdicts"].as_array().unwrap().len() > 20);
}
