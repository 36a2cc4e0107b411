use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lct_core::hermite_basis::{
    dispersion_estimate, phi, project, read_wavefunction_csv, uniform_grid, BasisParams,
    SampledWavefunction,
};
use serde_json::Value;
use tempfile::TempDir;

fn lct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lct"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn wavefunction(text: &str) -> SampledWavefunction {
    read_wavefunction_csv(text.as_bytes()).unwrap()
}

fn write_basis(dir: &TempDir, name: &str, n: usize, b: &str) -> PathBuf {
    let path = dir.path().join(name);
    let o = lct(&[
        "basis",
        "-n",
        &n.to_string(),
        "--B",
        b,
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn basis_ground_state_peaks_at_mean() {
    let o = lct(&["basis", "-n", "0", "--X", "1.5", "--B", "0.5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("x,re,im\n"));
    let wf = wavefunction(&text);
    let (i, _) = wf
        .values()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .unwrap();
    assert!((wf.grid()[i] - 1.5).abs() <= wf.spacing());
}

#[test]
fn basis_first_excited_has_one_interior_zero() {
    let o = lct(&["basis", "-n", "1", "--X", "-0.5", "--grid", "-6.5,5.5,1201"]);
    let wf = wavefunction(&stdout(&o));
    // sign changes of the real amplitude at P = 0
    let re: Vec<f64> = wf
        .values()
        .iter()
        .map(|v| v.re)
        .filter(|v| v.abs() > 1e-12)
        .collect();
    let crossings = re
        .windows(2)
        .filter(|w| w[0].signum() != w[1].signum())
        .count();
    assert_eq!(crossings, 1);
    // the modulus is smallest at the node x = X among interior points
    let interior = (0..wf.grid().len()).filter(|&i| (wf.grid()[i] + 0.5).abs() < 2.0);
    let i = interior
        .min_by(|&a, &b| wf.values()[a].norm().total_cmp(&wf.values()[b].norm()))
        .unwrap();
    assert!((wf.grid()[i] + 0.5).abs() <= 0.5 * wf.spacing() + 1e-12);
}

#[test]
fn basis_samples_project_back() {
    let o = lct(&["basis", "-n", "3", "--X", "0.2", "--P", "-1", "--B", "0.8"]);
    let wf = wavefunction(&stdout(&o));
    let params = BasisParams::new(0.2, -1.0, 0.8).unwrap();
    let e = project(&wf, &params, 6).unwrap();
    assert!((e.coeffs[3] - 1.0).norm() < 1e-6, "{}", e.coeffs[3]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["basis", "-n", "4", "--B", "0.3"],
        vec!["rep", "--op", "jcross", "--B", "0.7", "--cutoff", "6"],
        vec!["verify", "--basis-law", "--angles", "0.3,-0.2,0.1"],
    ] {
        assert_eq!(lct(&args).stdout, lct(&args).stdout, "{args:?}");
    }
}

#[test]
fn transform_zero_angles_is_identity() {
    let dir = TempDir::new().unwrap();
    let input = write_basis(&dir, "in.csv", 2, "0.5");
    let o = lct(&[
        "transform",
        "--input",
        s(&input),
        "--B",
        "0.5",
        "--angles",
        "0,0,0",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let before = wavefunction(&std::fs::read_to_string(&input).unwrap());
    let after = wavefunction(&stdout(&o));
    for (a, b) in before.values().iter().zip(after.values()) {
        assert!((a - b).norm() < 1e-6);
    }
}

#[test]
fn half_period_rotation_keeps_ground_state_modulus() {
    let dir = TempDir::new().unwrap();
    let input = write_basis(&dir, "g.csv", 0, "0.5");
    let pi = std::f64::consts::PI.to_string();
    let o = lct(&[
        "transform",
        "--input",
        s(&input),
        "--B",
        "0.5",
        "--angles",
        &format!("{pi},0,0"),
    ]);
    let before = wavefunction(&std::fs::read_to_string(&input).unwrap());
    let after = wavefunction(&stdout(&o));
    for (a, b) in before.values().iter().zip(after.values()) {
        assert!((a.norm() - b.norm()).abs() < 1e-4);
    }
}

#[test]
fn squeeze_scales_dispersion_as_the_group_element_predicts() {
    let dir = TempDir::new().unwrap();
    let input = write_basis(&dir, "g.csv", 0, "0.5");
    let out = dir.path().join("sq.csv");
    let t: f64 = 0.2;
    let o = lct(&[
        "transform",
        "--input",
        s(&input),
        "--B",
        "0.5",
        "--cutoff",
        "64",
        "--angles",
        &format!("0,0,{}", 2.0 * t),
        "--output",
        s(&out),
    ]);
    assert_eq!(code(&o), 0);
    let side: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("sq.csv.dispersion.json")).unwrap(),
    )
    .unwrap();
    let pi = side["symplectic"]["Pi"][0][0].as_f64().unwrap();
    let lambda = side["symplectic"]["Lambda"][0][0].as_f64().unwrap();
    assert!((pi - (-t).exp()).abs() < 1e-12 && (lambda - t.exp()).abs() < 1e-12);
    // the state moves by the inverse of the operator action: x ↦ x/Λ, p ↦ p/Π
    let measured =
        dispersion_estimate(&wavefunction(&std::fs::read_to_string(&out).unwrap())).unwrap();
    let before = side["before"]["dx2"].as_f64().unwrap();
    let predicted_dx2 = before / (lambda * lambda);
    let predicted_dp2 = side["before"]["dp2"].as_f64().unwrap() / (pi * pi);
    assert!(
        (measured.dx2 / predicted_dx2 - 1.0).abs() < 0.05,
        "{measured:?}"
    );
    assert!(
        (measured.dp2 / predicted_dp2 - 1.0).abs() < 0.05,
        "{measured:?}"
    );
    assert!(measured.dx2 < before);
    assert_eq!(side["after"]["dx2"].as_f64().unwrap(), measured.dx2);
}

#[test]
fn transform_json_emits_coefficients() {
    let dir = TempDir::new().unwrap();
    let input = write_basis(&dir, "g.csv", 1, "1");
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"X":0,"P":0,"B":1,"cutoff":16,"theta_plus":0.4,"theta_minus":0,"theta_cross":0}"#,
    )
    .unwrap();
    let side = dir.path().join("side.json");
    let o = lct(&[
        "--format",
        "json",
        "transform",
        "--input",
        s(&input),
        "--spec",
        s(&spec),
        "--sidecar",
        s(&side),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["cutoff"], 16);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 16);
    // phi(1) is an eigenvector of the plus generator with eigenvalue 3/4
    let c = &v["coeffs"][1];
    let (re, im) = (c[0].as_f64().unwrap(), c[1].as_f64().unwrap());
    assert!(
        (re - (0.3f64).cos()).abs() < 1e-6 && (im - (0.3f64).sin()).abs() < 1e-6,
        "{c}"
    );
    assert!(side.exists());
}

#[test]
fn transform_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let narrow = dir.path().join("narrow.csv");
    let grid = uniform_grid(-1.0, 1.0, 101);
    let wf = SampledWavefunction::from_fn(grid, |x| phi(0, x, &BasisParams::standard())).unwrap();
    let mut buf = Vec::new();
    lct_core::hermite_basis::write_wavefunction_csv(&wf, &mut buf).unwrap();
    std::fs::write(&narrow, buf).unwrap();
    let o = lct(&["transform", "--input", s(&narrow)]);
    assert_eq!(code(&o), 2);
    let o = lct(&["transform", "--input", s(&dir.path().join("missing.csv"))]);
    assert_eq!(code(&o), 2);
    let input = write_basis(&dir, "g.csv", 0, "0.5");
    let o = lct(&["transform", "--input", s(&input), "--cutoff", "8"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_table_passes() {
    let o = lct(&["verify", "--table", "Eq10"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["table"], "Eq10");
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["failed"], Value::Array(vec![]));
    assert!(v["max_residual"].is_null() && v["block"].is_null());
}

#[test]
fn verify_erratum_is_warning() {
    let o = lct(&["verify", "--table", "69", "--dim", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["status"], "WARN");
    assert_eq!(v["metric"], serde_json::json!([2, 0]));
    let failed = v["failed"].as_array().unwrap();
    assert!(!failed.is_empty());
    assert!(failed
        .iter()
        .all(|f| f["line"] == 1 && f["corrected_rhs"]["terms"].is_object()));
    assert!(String::from_utf8_lossy(&o.stderr).contains("WARN Eq69"));
}

#[test]
fn verify_all_reports_every_table() {
    let o = lct(&["verify", "--all", "--dim", "2", "--signature", "1,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let reports = v["reports"].as_array().unwrap();
    let tensor = reports.iter().find(|r| r["table"] == "Eq71").unwrap();
    assert_eq!(tensor["metric"], serde_json::json!([1, 1]));
    let closure = reports.iter().find(|r| r["table"] == "closure").unwrap();
    assert_eq!(closure["dimension"], 10);
    assert_eq!(closure["jacobi"], true);
    assert_eq!(v["status"], "WARN");
}

#[test]
fn verify_homomorphism() {
    let o = lct(&[
        "verify",
        "--homomorphism",
        "--angles",
        "0,0,0",
        "--cutoff",
        "32",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["max_residual"].as_f64().unwrap(), 0.0);
    assert_eq!(v["block"], 8);

    let o = lct(&[
        "verify",
        "--homomorphism",
        "--angles",
        "0.5,-0.3,0.4",
        "--cutoff",
        "64",
    ]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["max_residual"].as_f64().unwrap() < 1e-6);

    // far outside the convergent range of the truncated space
    let o = lct(&[
        "verify",
        "--homomorphism",
        "--angles",
        "0,0,3",
        "--cutoff",
        "32",
        "--tol",
        "1e-6",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["status"], "FAIL");
}

#[test]
fn verify_basis_law_flags_printed_rows() {
    let o = lct(&[
        "verify",
        "--basis-law",
        "--angles",
        "0,0,0",
        "--cutoff",
        "32",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["status"], "WARN");
    let failed = v["failed"].as_array().unwrap();
    assert_eq!(failed.len(), 2);
    assert_eq!(failed[0]["printed"], serde_json::json!([0.5, -0.5, 0.0]));
    assert_eq!(failed[0]["corrected_rhs"]["terms"]["bplus"], 1.0);
}

#[test]
fn verify_fock_and_csv() {
    let o = lct(&[
        "--format", "csv", "verify", "--fock", "--cutoff", "16", "--tol", "1e-12",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("check,metric,checked,failed,max_residual,status")
    );
    assert!(lines.next().unwrap().ends_with(",PASS"));
}

#[test]
fn verify_usage_errors() {
    for args in [
        vec!["verify"],
        vec!["verify", "--table", "Eq99"],
        vec![
            "verify",
            "--table",
            "Eq70",
            "--dim",
            "3",
            "--signature",
            "1,1",
        ],
        vec!["verify", "--table", "Eq70", "--dim", "5"],
        vec!["verify", "--homomorphism", "--angles", "1,2"],
        vec!["verify", "--homomorphism", "--cutoff", "8"],
    ] {
        assert_eq!(code(&lct(&args)), 2, "{args:?}");
    }
}

#[test]
fn expmap_zero_is_identity() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("a.json");
    std::fs::write(
        &input,
        r#"{"dim":2,"signature":[1,1],"theta_plus":[[0,0],[0,0]],"theta_minus":[[0,0],[0,0]],"theta_cross":[[0,0],[0,0]]}"#,
    )
    .unwrap();
    let v = json(&lct(&["expmap", "--input", s(&input)]));
    assert_eq!(v["Pi"], serde_json::json!([[1.0, 0.0], [0.0, 1.0]]));
    assert_eq!(v["Xi"], serde_json::json!([[0.0, 0.0], [0.0, 0.0]]));
    assert_eq!(v["residual"], 0.0);
}

#[test]
fn expmap_rotation() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("a.json");
    std::fs::write(
        &input,
        r#"{"dim":1,"signature":[1,0],"theta_plus":[[1.0]],"theta_minus":[[0]],"theta_cross":[[0]]}"#,
    )
    .unwrap();
    let v = json(&lct(&["expmap", "--input", s(&input)]));
    let get = |k: &str| v[k][0][0].as_f64().unwrap();
    assert!((get("Pi") - 0.5f64.cos()).abs() < 1e-14);
    assert!((get("Xi") - 0.5f64.sin()).abs() < 1e-14);
    assert!((get("Theta") + 0.5f64.sin()).abs() < 1e-14);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
    let o = lct(&["--format", "csv", "expmap", "--input", s(&input)]);
    assert!(stdout(&o).starts_with("block,row,col,value\nPi,0,0,"));
}

#[test]
fn expmap_malformed_input() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    for text in [
        "{not json",
        r#"{"dim":2,"signature":[1,0],"theta_plus":[[0,0],[0,0]],"theta_minus":[[0,0],[0,0]],"theta_cross":[[0,0],[0,0]]}"#,
        r#"{"dim":2,"signature":[2,0],"theta_plus":[[0,1],[0,0]],"theta_minus":[[0,0],[0,0]],"theta_cross":[[0,0],[0,0]]}"#,
    ] {
        std::fs::write(&bad, text).unwrap();
        assert_eq!(code(&lct(&["expmap", "--input", s(&bad)])), 2, "{text}");
    }
}

#[test]
fn rep_plus_diagonal() {
    let o = lct(&["rep", "--op", "jplus", "--B", "1", "--cutoff", "5"]);
    let v = json(&o);
    assert_eq!(v["label"], "Jplus");
    assert_eq!(v["cutoff"], 5);
    let diag: Vec<f64> = (0..4)
        .map(|k| v["entries"][k][k][0].as_f64().unwrap())
        .collect();
    assert_eq!(diag, vec![1.0, 3.0, 5.0, 7.0]);
    let o = lct(&["--format", "csv", "rep", "--op", "zminus", "--cutoff", "3"]);
    let text = stdout(&o);
    assert!(text.starts_with("row,col,re,im\n"));
    assert!(text.contains("\n1,2,1.4142135623730951,0.0\n"));
    assert_eq!(
        code(&lct(&[
            "rep", "--op", "jplus", "--B", "-1", "--cutoff", "5"
        ])),
        2
    );
}

#[test]
fn dispersion_of_second_state() {
    let dir = TempDir::new().unwrap();
    let input = write_basis(&dir, "p2.csv", 2, "1");
    let v = json(&lct(&["dispersion", "--input", s(&input)]));
    let a = BasisParams::new(0.0, 0.0, 1.0).unwrap().a();
    assert!((v["dx2"].as_f64().unwrap() - 5.0 * a).abs() < 1e-3);
    assert!((v["dp2"].as_f64().unwrap() - 5.0).abs() < 1e-3);
    let o = lct(&["--format", "csv", "dispersion", "--input", s(&input)]);
    assert!(stdout(&o).starts_with("X,P,dx2,dp2\n"));
}

#[test]
fn stdin_input_and_help() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lct"))
        .args(["dispersion", "--input", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let csv = stdout(&lct(&["basis", "-n", "0"]));
    std::io::Write::write_all(child.stdin.as_mut().unwrap(), csv.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!((json(&o)["dx2"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    for sub in [
        "basis",
        "transform",
        "verify",
        "expmap",
        "rep",
        "dispersion",
    ] {
        let o = lct(&[sub, "--help"]);
        assert_eq!(code(&o), 0, "{sub}");
    }
    assert_eq!(code(&lct(&["basis"])), 2);
}
