use std::process::{Command, Output};

use cli::{format_complex, parse_complex};
use num_complex::Complex64;
use proptest::prelude::*;
use serde_json::Value;

fn renorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn complex_literals() {
    let c = Complex64::new;
    for (s, want) in [
        ("1.5", c(1.5, 0.0)),
        ("-2i", c(0.0, -2.0)),
        ("i", c(0.0, 1.0)),
        ("-i", c(0.0, -1.0)),
        ("1+2i", c(1.0, 2.0)),
        ("1-i", c(1.0, -1.0)),
        ("1e-3-2e-1i", c(1e-3, -0.2)),
        ("-1E+2+3.5j", c(-100.0, 3.5)),
        (" 0.5 + 0.25i ", c(0.5, 0.25)),
    ] {
        assert_eq!(parse_complex(s).unwrap(), want, "{s}");
    }
    for bad in ["", "abc", "1+", "1+2", "ii", "1+2i3", "nan", "inf"] {
        assert!(parse_complex(bad).is_err(), "{bad}");
    }
}

proptest! {
    #[test]
    fn complex_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let z = Complex64::new(re, im);
        prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }
}

#[test]
fn fixed_points_at_d3_match_legend() {
    let o = renorm(&["dynsys", "fixed-points", "--d", "3", "--period", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let pts = v["result"].as_array().unwrap();
    assert_eq!(pts.len(), 5);
    let legend = [
        (-1.675, -1.175, "repelling"),
        (-1.309, 0.309, "repelling"),
        (-0.5, 0.0, "neutral"),
        (-0.191, -0.809, "repelling"),
        (-0.075, 0.425, "unstable"),
    ];
    for (p, (u, v0, class)) in pts.iter().zip(legend) {
        let chart = p["chart"].as_array().unwrap();
        let du = chart[0].as_f64().unwrap() - u;
        let dv = chart[1].as_f64().unwrap() - v0;
        assert!(du.hypot(dv) < 2e-3);
        assert_eq!(p["class"], class);
        assert_eq!(p["d"], 3.0);
        assert_eq!(p["period"], 1);
        assert_eq!(p["eigs"].as_array().unwrap().len(), 2);
    }
    assert_eq!(v["seed"], 0);
}

#[test]
fn abc_solve_at_d3_points_to_the_line_pair_branch() {
    let o = renorm(&["abc", "solve", "--d", "3", "--a", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("abc d3"));
    assert!(o.stdout.is_empty());
}

#[test]
fn loop_flags_are_exclusive_and_required() {
    assert_eq!(
        renorm(&["abc", "solve", "--d", "2.5", "--omega", "0.7", "--a", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(renorm(&["abc", "solve", "--a", "1"]).status.code(), Some(2));
    assert_eq!(
        renorm(&["abc", "solve", "--d", "two", "--a", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        renorm(&["dynsys", "orbit", "--d", "2+i", "--u", "0", "--v", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(renorm(&["dynsys", "portrait", "--d", "3"]).status.code(), Some(2));
}

#[test]
fn omega_determines_d() {
    let o = renorm(&["abc", "solve", "--omega", "0.7", "--a", "-1.2+0.3i", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let d = v["params"]["d.re"].as_f64().unwrap();
    assert!((d - (0.7 + 1.0 / 0.7 + 1.0)).abs() < 1e-15);
    assert_eq!(v["params"]["a.im"], 0.3);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["checks"][0]["tolerance"], 1e-10);
    assert_eq!(v["pass"], true);
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["momenta", "--d", "3", "--seed", "5"][..],
        &["abc", "family", "--omega", "1.6+0.3i", "--z", "0.4-0.9i"][..],
        &["tl", "ybe", "--lambda", "0.2", "--mu", "-0.4+0.1i", "--scan"][..],
    ] {
        let a = renorm(args);
        let b = renorm(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    // A different seed changes the random states.
    let a = renorm(&["momenta", "--d", "3", "--seed", "5"]);
    let b = renorm(&["momenta", "--d", "3", "--seed", "6"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn verification_failure_names_the_check() {
    // δ = 2 puts the cabled model at d = 3, where the generic family and the
    // tree labels built from it do not exist.
    let o = renorm(&["verify", "tl", "--delta", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("tl.commute.tree"), "{err}");
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["tl.commute.tree"]);
}

#[test]
fn verify_tl_passes_at_default_delta() {
    let o = renorm(&["verify", "tl", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in v.as_array().unwrap() {
        assert_eq!(r["seed"], 42);
        assert!(r["tolerance"].is_number());
        assert_eq!(r["params"]["delta"], 1.9);
    }
}

#[test]
fn portrait_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d3.csv");
    let o = renorm(&[
        "dynsys",
        "portrait",
        "--d",
        "3",
        "--lo",
        "-1",
        "--hi",
        "1",
        "--step",
        "0.5",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u,v,tag,steps"));
    assert_eq!(lines.count(), 25);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("d3.json")).unwrap()).unwrap();
    for key in ["d", "b1", "b4", "fixed_points", "period_two", "attractors", "seed"] {
        assert!(side.get(key).is_some(), "{key}");
    }
    assert_eq!(side["fixed_points"].as_array().unwrap().len(), 5);
    assert!((side["b4"]["u"].as_f64().unwrap() + 0.5).abs() < 1e-12);
    assert!((side["b4"]["v"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(json(&o)["result"]["rows"], 25);
}

#[test]
fn orbit_csv() {
    let o = renorm(&[
        "dynsys", "orbit", "--d", "3", "--u", "0", "--v", "0", "--steps", "2", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["step,u,v", "0,0,0", "1,-0.5,1.5", "2,0.07692307692307693,0"]);
}

#[test]
fn coalescence_command() {
    let o = renorm(&["dynsys", "coalesce"]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o)["result"]["d"].as_f64().unwrap();
    assert!((d - 3.52783).abs() < 5e-4);
}

#[test]
fn tl_commands() {
    let o = renorm(&["tl", "commute", "--lambda", "0.2", "--mu", "0.5", "--mode", "tree"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["result"]["residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(
        renorm(&["tl", "commute", "--lambda", "0.2", "--mu", "0.5", "--sites", "8"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        renorm(&["tl", "ybe", "--delta", "0", "--lambda", "0", "--mu", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn hamiltonian_commands() {
    let o = renorm(&["hamiltonian", "s-matrix", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["closed_form"][2], serde_json::json!([0.5, 0.25, 2.0]));
    let o = renorm(&["hamiltonian", "eigs", "--d", "2.61"]);
    assert_eq!(o.status.code(), Some(0));
    let e = json(&o);
    let list = e["result"].as_array().unwrap();
    assert_eq!(list[0]["eigenvalue"], 2.0);
    for x in &list[1..] {
        let r = x["density_range"].as_array().unwrap();
        assert!(r[0].as_f64().unwrap() < 0.0 && r[1].as_f64().unwrap() > 0.0);
    }
}
