use std::path::Path;
use std::process::{Command, Output};

use tilted_sos::certificates::{certificate_to_json, library_entry};
use tilted_sos::linalg::complex;
use tilted_sos::qubit::{system_to_json, QubitSystem};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilted-sos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_named_certificates() {
    let o = run(&["verify", "--name", "sos1", "--theta", "symbolic"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("\"residual\": \"0\""));
    assert_eq!(run(&["verify", "--name", "sos2", "--theta", "0.3"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--name", "N1", "--theta", "pi/8"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--name", "N1", "--theta", "pi/4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn corrupted_file_fails_with_residual() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = certificate_to_json(&library_entry("sos1").unwrap());
    let good = write(dir.path(), "good.json", &v.to_string());
    assert_eq!(run(&["verify", &good]).status.code(), Some(0));
    v["gram"][0][0] = serde_json::json!("3/7");
    let bad = write(dir.path(), "bad.json", &v.to_string());
    let o = run(&["verify", &bad, "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL"));
    let residual = text.lines().find(|l| l.starts_with("residual: ")).unwrap();
    assert_ne!(residual, "residual: 0");
}

#[test]
fn audit_reports_endpoints_and_rank() {
    let o = run(&["audit-yn"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0.07573") || text.contains("0.07574"), "{text}");
    assert!(text.contains("0.73013") || text.contains("0.73014"), "{text}");
    assert!(text.contains("rank 4"));
}

#[test]
fn search_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (theta, basis) in [("pi/4", "5"), ("pi/8", "9"), ("0.3", "5")] {
        let out = dir.path().join(format!("cert-{basis}.json"));
        let out = out.to_string_lossy();
        let o = run(&["search", "--theta", theta, "--basis", basis, "--out", &out]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(run(&["verify", &out]).status.code(), Some(0));
    }
    assert_eq!(run(&["search", "--theta", "0.3", "--negate"]).status.code(), Some(1));
    assert_eq!(run(&["search", "--theta", "0.3", "--basis", "7"]).status.code(), Some(2));
}

#[test]
fn tables_are_deterministic() {
    for args in [
        &["vertices"][..],
        &["vertices", "--format", "json"],
        &["bounds", "--theta-grid", "0.2:0.7:3", "--eps-grid", "0.001:0.004:2"],
        &["region", "--theta", "pi/8", "--grid", "7"],
        &["library", "--format", "json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let o = run(&["region", "--theta", "pi/4", "--grid", "5"]);
    assert!(stdout(&o).starts_with("lambda,mu,q,margin\n"));
    assert_eq!(run(&["region", "--theta", "0.3"]).status.code(), Some(2));
}

#[test]
fn bounds_csv_scales_with_square_root() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bounds.csv");
    let o = run(&["bounds", "--theta-grid", "0.3:0.3:1", "--eps-grid", "0.001:0.004:2", "--out", &out.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<Vec<f64>> = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    for (a, b) in rows[0][2..].iter().zip(&rows[1][2..]) {
        assert!((b / a - 2.0).abs() < 1e-10);
    }
    assert_eq!(run(&["bounds", "--theta-grid", "0:1", "--eps-grid", "0:1:2"]).status.code(), Some(2));
}

#[test]
fn selftest_and_eval_on_system_files() {
    let dir = tempfile::tempdir().unwrap();
    let reference = QubitSystem::reference(0.5).unwrap();
    let good = write(dir.path(), "ref.json", &system_to_json(&reference, true).to_string());
    let o = run(&["selftest", "--system", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"passed\": true"));
    let o = run(&["selftest", "--system", &good, "--report", "csv"]);
    assert!(stdout(&o).starts_with("section,name,measured,bound,passed\n"));

    let o = run(&["eval", "--system", &good, "--poly", "1 - A0*B0", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    let t = tilted_sos::Tilt::numeric(0.5).unwrap();
    assert!((v - (1.0 - t.cos_mu)).abs() < 1e-10);

    let mut soft = reference.clone();
    soft.bob[1] = &soft.bob[1] * complex(0.8, 0.0);
    let bad = write(dir.path(), "soft.json", &system_to_json(&soft, false).to_string());
    let o = run(&["selftest", "--system", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not dichotomic"));

    let o = run(&["selftest", "--model", "depolarized", "--theta", "pi/6", "--visibility", "0.99"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--name", "sos1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["selftest"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/cert.json"]).status.code(), Some(2));
}
