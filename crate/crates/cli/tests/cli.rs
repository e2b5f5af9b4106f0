use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn lerch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lerch")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn re_im(v: &Value) -> (f64, f64) {
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn eval_known_constant() {
    let out = lerch(&["eval", "--s", "2,0", "--a", "0.5,0", "--c", "1,0"]);
    assert!(out.status.success());
    let v = json(&out);
    let (re, im) = re_im(&v["value"]);
    assert!((re - PI * PI / 12.0).abs() < 1e-10);
    assert_eq!(im, 0.0);
    assert!(v["abs_err"].as_f64().unwrap() <= 1e-10);
    assert!(v["method"].is_string() && v["route"].is_string());
}

#[test]
fn eval_prints_seventeen_digits() {
    let out = lerch(&["eval", "--s", "2,0", "--a", "0.5,0", "--c", "1,0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let value = text.split(r#""value":{"re":"#).nth(1).unwrap();
    let mantissa = value.split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(|ch| ch.is_ascii_digit()).count(), 17);
}

#[test]
fn vanishing_generator_leaves_value_unchanged() {
    let base = json(&lerch(&["eval", "--s", "0.5,0", "--a", "0.5,0", "--c", "0.5,0"]));
    let moved = json(&lerch(&["eval", "--s", "0.5,0", "--a", "0.5,0", "--c", "0.5,0", "--branch", "Y3^7"]));
    assert_eq!(base["value"], moved["value"]);
    assert_eq!(moved["branch"], "ky[3]=7");
}

#[test]
fn branch_shifts_by_monodromy() {
    let base = json(&lerch(&["eval", "--s", "0.3,0", "--a", "0.4,0", "--c", "0.6,0"]));
    let moved = json(&lerch(&["eval", "--s", "0.3,0", "--a", "0.4,0", "--c", "0.6,0", "--branch", "kx[0]=2"]));
    let m = json(&lerch(&["monodromy", "--word", "X0^2", "--s", "0.3", "--a", "0.4", "--c", "0.6"]));
    let (b, mv, mm) = (re_im(&base["value"]), re_im(&moved["value"]), re_im(&m["value"]));
    assert!((mv.0 - b.0 - mm.0).abs() < 1e-12 && (mv.1 - b.1 - mm.1).abs() < 1e-12);
}

#[test]
fn eval_rejects_punctures_and_cuts() {
    let out = lerch(&["eval", "--s", "0.5,0", "--a", "1,0", "--c", "0.5,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "InvalidPoint");
    assert!(err["error"]["message"].as_str().unwrap().contains("a is an integer puncture"));

    let out = lerch(&["eval", "--s", "0.5,0", "--a", "0.5,0", "--c", "-1,-0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "CutViolation");
}

#[test]
fn monodromy_commutator_vanishes() {
    let out = lerch(&["monodromy", "--word", "X0 Y0 X0^-1 Y0^-1", "--s", "0.3", "--a", "0.4", "--c", "0.6"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(re_im(&v["value"]), (0.0, 0.0));
    assert_eq!(v["abelianization"].as_array().unwrap().len(), 0);
}

#[test]
fn monodromy_square_and_special_value() {
    let sq = json(&lerch(&["monodromy", "--word", "X0^2", "--s", "0.3", "--a", "0.4", "--c", "0.6"]));
    let one = json(&lerch(&["monodromy", "--word", "X0", "--s", "0.3", "--a", "0.4", "--c", "0.6"]));
    let (m1r, m1i) = re_im(&one["value"]);
    let chi = (2.0 * PI * 0.3).cos() + 1.0;
    let chi_i = (2.0 * PI * 0.3).sin();
    let expect = (chi * m1r - chi_i * m1i, chi * m1i + chi_i * m1r);
    let got = re_im(&sq["value"]);
    assert!((got.0 - expect.0).abs() < 1e-13 && (got.1 - expect.1).abs() < 1e-13);
    assert_eq!(sq["contributions"][0]["generator"], "X0");
    assert_eq!(sq["contributions"][0]["k"], 2);

    let y0 = json(&lerch(&["monodromy", "--word", "Y0", "--s", "-1", "--a", "0.4", "--c", "0.6"]));
    assert_eq!(re_im(&y0["value"]), (0.0, 0.0));
}

#[test]
fn monodromy_bad_word_exits_two() {
    let out = lerch(&["monodromy", "--word", "Z3", "--s", "0.3", "--a", "0.4", "--c", "0.6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_residue_suite() {
    let out = lerch(&["verify", "--suite", "residue", "--samples", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS residue: samples=5"));
}

#[test]
fn verify_is_deterministic() {
    let a = lerch(&["verify", "--suite", "funceq", "--samples", "20", "--seed", "7"]);
    let b = lerch(&["verify", "--suite", "funceq", "--samples", "20", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_pde_reports_small_residual() {
    let out = lerch(&["verify", "--suite", "pde", "--samples", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.contains(" pde:")).unwrap();
    let r: f64 = line.split("max_residual=").nth(1).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!(r < 1e-8);
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    assert_eq!(lerch(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

fn grid_rows(args: &[&str], dir: &tempfile::TempDir, name: &str) -> Vec<csv::StringRecord> {
    let path = dir.path().join(name);
    let mut all: Vec<&str> = vec!["grid"];
    all.extend_from_slice(args);
    let p = path.to_str().unwrap().to_string();
    all.extend_from_slice(&["--out", &p]);
    let out = lerch(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["coord_re", "coord_im", "z_re", "z_im", "abs_err", "method"]);
    rdr.records().map(|r| r.unwrap()).collect()
}

#[test]
fn grid_in_s_on_polycylinder() {
    let dir = tempfile::tempdir().unwrap();
    let rows = grid_rows(&["--axis", "s", "--re", "0,1,11", "--s", "0", "--a", "0.5", "--c", "0.5"], &dir, "s.csv");
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| &r[5] == "omega_tilde"));
}

#[test]
fn grid_crossing_removable_point() {
    let dir = tempfile::tempdir().unwrap();
    let rows = grid_rows(&["--axis", "c", "--re", "1.5,2.5,11", "--s", "-0.5", "--a", "0.3,-0.1", "--c", "0"], &dir, "c.csv");
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| &r[5] != "skipped"));
    // the row at c = 2 sits between its neighbours
    let z: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!((z[5] - (z[4] + z[6]) / 2.0).abs() < 1e-2 * (z[4] - z[6]).abs().max(1e-3));
}

#[test]
fn grid_crossing_puncture() {
    let dir = tempfile::tempdir().unwrap();
    let rows = grid_rows(&["--axis", "c", "--re", "-0.5,0.5,11", "--s", "0.5", "--a", "0.3", "--c", "0"], &dir, "p.csv");
    let skipped: Vec<_> = rows.iter().filter(|r| &r[5] == "skipped").collect();
    assert_eq!(skipped.len(), 1);
    assert_eq!(skipped[0][0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(&skipped[0][2], "");
}

#[test]
fn grid_output_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("t{threads}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_lerch"))
            .env("LERCH_THREADS", threads)
            .args(["grid", "--axis", "a", "--re", "0.1,0.9,5", "--im", "-0.2,0.2,3", "--s", "0.5,1", "--a", "0", "--c", "0.7"])
            .args(["--branch", "X0 Y-1", "--format", "json", "--out", path.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let rows: Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 15);
}

#[test]
fn grid_unwritable_path() {
    let out = lerch(&["grid", "--axis", "s", "--re", "0,1,2", "--s", "0", "--a", "0.5", "--c", "0.5", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "Io");
}
