use std::path::Path;
use std::process::{Command, Output};

use quadcert::formats::{variety_from_json, AnyVariety, ReportDoc};

fn quadcert(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadcert"))
        .args(args)
        .current_dir(dir)
        .env_remove("QC_SEED")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) {
    std::fs::write(dir.join(name), body).unwrap();
}

fn a2_of(dir: &Path, spec: &str) -> (usize, String) {
    write(dir, "spec.json", spec);
    let out = quadcert(&["construct", "spec.json", "--out", "v.json"], dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = quadcert(&["a2", "v.json"], dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    (
        doc["a2"].as_u64().unwrap() as usize,
        doc["certification"].as_str().unwrap().to_string(),
    )
}

#[test]
fn a2_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(a2_of(d, r#"{"tag":"RNC","r":3,"field":"rational"}"#).0, 3);
    assert_eq!(a2_of(d, r#"{"tag":"RNC","r":3}"#).0, 3);
    let (a2, cert) = a2_of(d, r#"{"tag":"EllipticNormal","c":3,"A":"-1","B":"0"}"#);
    assert_eq!((a2, cert.as_str()), (5, "SymbolicCertified"));
    assert_eq!(a2_of(d, r#"{"tag":"PointConfig","c":4,"m":9}"#).0, 6);
    assert_eq!(a2_of(d, r#"{"tag":"Scroll","type":[1,2]}"#).0, 3);
}

#[test]
fn emitted_basis_carries_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "spec.json", r#"{"tag":"RNC","r":3}"#);
    assert!(quadcert(&["construct", "spec.json", "--out", "v.json"], d).status.success());
    let out = quadcert(&["a2", "v.json", "--emit-basis"], d);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["quadrics"].as_array().unwrap().len(), 3);
    assert_eq!(doc["provenance"]["field"], "prime:2147483647");
    let text = std::fs::read_to_string(d.join("v.json")).unwrap();
    assert!(matches!(variety_from_json(&text).unwrap(), AnyVariety::Prime(_)));
}

#[test]
fn construct_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "bad.json", r#"{"tag":"Hypersurface"}"#);
    let out = quadcert(&["construct", "bad.json"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    write(d, "bad.json", r#"{"tag":"Scroll","type":[0,0]}"#);
    assert_eq!(quadcert(&["construct", "bad.json"], d).status.code(), Some(1));
}

#[test]
fn rational_elliptic_is_a_certification_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "spec.json", r#"{"tag":"EllipticNormal","c":3,"A":"-1","B":"0","field":"rational"}"#);
    assert!(quadcert(&["construct", "spec.json", "--out", "v.json"], d).status.success());
    assert_eq!(quadcert(&["a2", "v.json"], d).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(quadcert(&["verify", "nope"], d).status.code(), Some(64));
    assert_eq!(quadcert(&["verify"], d).status.code(), Some(64));
    assert_eq!(quadcert(&["frobnicate"], d).status.code(), Some(64));
    assert_eq!(quadcert(&["verify", "fano", "--prime", "1000"], d).status.code(), Some(64));
    assert_eq!(quadcert(&["verify", "fano", "--prime", "32003"], d).status.code(), Some(64));
    assert_eq!(quadcert(&["verify", "fano", "--field", "rational"], d).status.code(), Some(64));
    assert_eq!(quadcert(&["verify", "castelnuovo", "--c", "6..2"], d).status.code(), Some(64));
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = quadcert(&["verify", "castelnuovo", "--c", "2..6"], d);
    assert_eq!(out.status.code(), Some(0));
    let r: ReportDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((r.summary.pass, r.summary.total), (5, 5));
    let obs: Vec<&str> = r.scenarios.iter().map(|s| s.observed.as_str()).collect();
    assert_eq!(obs, ["a2=3", "a2=6", "a2=10", "a2=15", "a2=21"]);

    let out = quadcert(&["verify", "theorem-1-3", "--c", "4"], d);
    assert_eq!(out.status.code(), Some(0));
    let r: ReportDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.summary.pass, 3);

    let out = quadcert(&["verify", "divisor-difference", "--type", "1,2", "--sweep"], d);
    assert_eq!(out.status.code(), Some(0));
    let r: ReportDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.summary.total > 10);
    assert_eq!(r.summary.pass, r.summary.total);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["verify", "fano", "--seed", "7", "--out", "a.json"];
    assert!(quadcert(&args, d).status.success());
    let mut again = args;
    again[5] = "b.json";
    let out = Command::new(env!("CARGO_BIN_EXE_quadcert"))
        .args(again.iter().chain(["--jobs", "1"].iter()))
        .current_dir(d)
        .output()
        .unwrap();
    assert!(out.status.success());
    let a = std::fs::read(d.join("a.json")).unwrap();
    let b = std::fs::read(d.join("b.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn qc_seed_sets_the_default_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_quadcert"));
        cmd.args(["verify", "unique-container"]).args(extra).current_dir(d).env_remove("QC_SEED");
        if let Some(s) = env {
            cmd.env("QC_SEED", s);
        }
        let out = cmd.output().unwrap();
        serde_json::from_slice::<ReportDoc>(&out.stdout).unwrap()
    };
    let by_env = run(Some("11"), &[]);
    let by_flag = run(None, &["--seed", "11"]);
    let default = run(None, &[]);
    assert_eq!(by_env, by_flag);
    assert_eq!(by_env.environment.seeds[0], 11);
    assert_eq!(default.environment.seeds[0], 0);
    assert_eq!(run(Some("11"), &["--seed", "3"]).environment.seeds[0], 3);
}

#[test]
fn csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = quadcert(&["verify", "two-normality", "--c", "3", "--format", "csv"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("scenario,param_string,expected,observed,status,seed,prime"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("two-normality/c=3/m=5,c=3;m=5,a2=5,a2=5,Pass,"));
}

#[test]
fn gamma_suite_reports_degree_choice() {
    let dir = tempfile::tempdir().unwrap();
    let out = quadcert(&["verify", "gamma-on-curve", "--format", "text"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("deg D fixed to c+k = 5"));
}
