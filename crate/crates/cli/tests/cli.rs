use std::path::Path;
use std::process::{Command, Output};

use dupin_cli::{parse_config, render_mesh, run_report, CheckRecord};
use dupin_core::{build_dupin, Method};

fn dupin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dupin"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn records(text: &str) -> Vec<CheckRecord> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn mesh_of(config: &str) -> (String, String) {
    let cfg = parse_config(config).unwrap();
    let d = build_dupin(&cfg.spec.unwrap()).unwrap();
    let (obj, csv, _) = render_mesh(&d, cfg.grid);
    (obj, csv)
}

#[test]
fn two_by_two_grid_is_one_quad() {
    let (obj, csv) = mesh_of(r#"{"case": "cylinder-euclidean", "grid": [2, 2]}"#);
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 4);
    assert_eq!(
        obj.lines()
            .filter(|l| l.starts_with("f "))
            .collect::<Vec<_>>(),
        ["f 1 2 4 3"]
    );
    assert_eq!(
        csv.lines().next(),
        Some("u1,u2,x,y,z,lambda1,lambda2,omega")
    );
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn cylinder_mesh_counts() {
    let (obj, _) = mesh_of(r#"{"case": "cylinder-euclidean"}"#);
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 441);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 400);
}

#[test]
fn ex1_origin_vertex_is_exactly_zero() {
    let (obj, _) = mesh_of(r#"{"case": "ex1-a"}"#);
    let centre = obj.lines().nth(10 * 21 + 10).unwrap();
    assert_eq!(centre, "v 0 0 0");
}

#[test]
fn cylinder_field_residual_is_zero() {
    let cfg =
        parse_config(r#"{"case": "cylinder-euclidean", "checks": ["calapso_omega"]}"#).unwrap();
    let r = run_report(&cfg, Method::Jet).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].max_abs, Some(0.0));
    assert!(r[0].pass);
}

#[test]
fn perturbed_constant_fails_gauss_residual() {
    let cfg = parse_config(
        r#"{"case": "ex1-a", "a22": 2.1, "enforce_constraint": false, "checks": ["gauss_residual"]}"#,
    )
    .unwrap();
    let r = run_report(&cfg, Method::Jet).unwrap();
    assert!(!r[0].pass, "{r:?}");
}

#[test]
fn report_lines_have_the_documented_fields() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.json"),
        r#"{"case": "ex2-a", "checks": ["gauss2", "unit_normal"]}"#,
    )
    .unwrap();
    let out = dupin(dir.path(), &["verify", "--config", "c.json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["check", "grid", "max_abs", "tol", "pass", "excluded"] {
            assert!(v.get(key).is_some(), "{key} missing in {line}");
        }
    }
    assert_eq!(records(&text).len(), 2);
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"case": "ex1-a", "checks": ["bogus"]}"#, "unknown check"),
        (r#"{"case": "ex1-a"}"#, "no checks requested"),
        (
            r#"{"case": "ex1-a", "grid": [1, 5], "checks": ["all"]}"#,
            "grid too small",
        ),
        (
            r#"{"case": "ex1-a", "domain": [[0, 0], [0, 1]], "checks": ["all"]}"#,
            "degenerate domain",
        ),
        (
            r#"{"case": "ex1-a", "a22": 2.1, "checks": ["all"]}"#,
            "constraint violated",
        ),
        (r#"{"case": "ex1-a" "#, "malformed"),
    ];
    for (text, message) in cases {
        std::fs::write(dir.path().join("c.json"), text).unwrap();
        let out = dupin(dir.path(), &["verify", "--config", "c.json"]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        assert!(out.stdout.is_empty(), "{text}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(message), "{text}: {err}");
    }
}

#[test]
fn calapso_subcommand_with_differences() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.json"), r#"{"case": "ex3-a"}"#).unwrap();
    for solution in ["corollary1", "prop4"] {
        let out = dupin(
            dir.path(),
            &[
                "--method",
                "fd",
                "calapso",
                "--config",
                "c.json",
                "--solution",
                solution,
                "--report",
                "r.jsonl",
            ],
        );
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let r = records(&std::fs::read_to_string(dir.path().join("r.jsonl")).unwrap());
        assert!(r.iter().any(|r| r.method.as_deref() == Some("fd")));
        assert!(r.iter().all(|r| r.pass));
    }
    let out = dupin(
        dir.path(),
        &["calapso", "--config", "c.json", "--solution", "prop2"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_constraint_prints_a_loadable_job() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c.json"), r#"{"case": "ex2-a", "a22": 0}"#).unwrap();
    let out = dupin(
        dir.path(),
        &["solve-constraint", "--config", "c.json", "--free", "a22"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cfg = parse_config(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(cfg.spec.unwrap().constants.a22, 2.0);
}
