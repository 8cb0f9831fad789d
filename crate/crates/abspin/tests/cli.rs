#![allow(clippy::excessive_precision)]

use std::process::{Command, Output};

use abspin_core::spectrum::closed_form_energy;
use abspin_core::{Branch, FluxConfig, PhysicalParams, QuantumState, Spin};

fn abspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abspin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

const HEADER: &str = "scan_var,scan_value,n,m,s,branch,energy,kappa,exists";

#[test]
fn ground_state_row() {
    let o = abspin(&["spectrum", "--branch", "regular", "--n", "1", "--m", "0", "--s", "+1", "--flux", "0", "--omega", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), HEADER);
    let rows = data_lines(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][6].parse::<f64>().unwrap(), -2.0);
    assert_eq!(rows[0][8], "true");
}

#[test]
fn irregular_anchor_row() {
    let o = abspin(&["spectrum", "--branch", "irregular", "--n", "1", "--m", "0", "--flux", "0.49", "--omega", "0"]);
    assert!(o.status.success());
    let e: f64 = data_lines(&stdout(&o))[0][6].parse().unwrap();
    assert!((e / -5000.0 - 1.0).abs() < 1e-6);
}

#[test]
fn sector_violation_exit_codes() {
    let strict = abspin(&["spectrum", "--branch", "irregular", "--m", "1", "--flux", "0", "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
    let lax = abspin(&["spectrum", "--branch", "irregular", "--m", "1", "--flux", "0"]);
    assert!(lax.status.success());
    let rows = data_lines(&stdout(&lax));
    assert_eq!(rows[0][8], "false");
    assert!(rows[0][6].parse::<f64>().unwrap().is_nan());
}

#[test]
fn invalid_flags_exit_2() {
    assert_eq!(abspin(&["spectrum", "--bogus"]).status.code(), Some(2));
    assert_eq!(abspin(&["spectrum", "--spin", "3"]).status.code(), Some(2));
    assert_eq!(abspin(&["scan", "--scan", "flux:1:0:5"]).status.code(), Some(2));
    assert_eq!(abspin(&["scan"]).status.code(), Some(2));
    assert_eq!(abspin(&["spectrum", "--mass", "-1"]).status.code(), Some(2));
    assert_eq!(abspin(&["spectrum", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn scans_are_byte_identical_and_lf_terminated() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &std::path::Path| {
        vec![
            "scan".to_string(),
            "--scan".into(),
            "flux:0:10:201".into(),
            "--m".into(),
            "-5..5".into(),
            "--n".into(),
            "1..3".into(),
            "--spin".into(),
            "both".into(),
            "--branch".into(),
            "both".into(),
            "--omega".into(),
            "0.7".into(),
            "--out".into(),
            p.to_string_lossy().into_owned(),
        ]
    };
    for p in [&a, &b] {
        let argv = args(p);
        let o = abspin(&argv.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert!(!ta.contains(&b'\r'));
    let text = String::from_utf8(ta).unwrap();
    assert!(text.starts_with(&format!("{HEADER}\n")));
    assert_eq!(text.lines().count(), 1 + 201 * 11 * 3 * 2 * 2);
}

#[test]
fn csv_rows_round_trip_to_closed_form() {
    let o = abspin(&["scan", "--scan", "omega:-2:3:11", "--flux", "0.3", "--m", "-2..2", "--n", "1,2", "--s", "both", "--branch", "both"]);
    assert!(o.status.success());
    let mut checked = 0;
    for row in data_lines(&stdout(&o)) {
        let omega: f64 = row[1].parse().unwrap();
        let n: u32 = row[2].parse().unwrap();
        let m: i64 = row[3].parse().unwrap();
        let spin = Spin::from_sign(row[4].parse().unwrap()).unwrap();
        let branch = if row[5] == "regular" { Branch::Regular } else { Branch::Irregular };
        let params = PhysicalParams::atomic().with_omega(omega).unwrap();
        let state = QuantumState::new(n, m, spin, branch).unwrap();
        match closed_form_energy(state, &params, &FluxConfig::new(0.3).unwrap()) {
            Ok(r) => {
                assert_eq!(row[6].parse::<f64>().unwrap(), r.energy);
                assert_eq!(row[7].parse::<f64>().unwrap(), r.kappa);
                checked += 1;
            }
            Err(_) => assert_eq!(row[8], "false"),
        }
    }
    assert!(checked > 0);
}

#[test]
fn json_format() {
    let o = abspin(&["spectrum", "--m", "0,1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["energy"], -2.0);
    assert_eq!(rows[0]["branch"], "regular");
}

#[test]
fn verify_default_passes() {
    let o = abspin(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "pass", "residual", "tolerance"] {
            assert!(c.get(key).is_some());
        }
    }
}

#[test]
fn verify_catches_gamma_fault() {
    let o = abspin(&["verify", "--perturb-gamma", "1e-3"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let rec = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "specfun.gamma_recurrence").unwrap();
    assert_eq!(rec["pass"], false);
}

#[test]
fn verify_only_filters() {
    let o = abspin(&["verify", "--only", "secular"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["name"].as_str().unwrap().starts_with("secular.")));
    assert_eq!(abspin(&["verify", "--only", "nonsense"]).status.code(), Some(2));
}

#[test]
fn secular_command() {
    let o = abspin(&["secular", "--lambda", "-1", "--flux", "0.3", "--count", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "index,j,lambda,kappa,energy,residual");
    let rows = data_lines(&text);
    assert_eq!(rows.len(), 3);
    let k: f64 = rows[0][3].parse().unwrap();
    assert!((k / 7.05558511854228669 - 1.0).abs() < 1e-10);
    let inf = abspin(&["secular", "--lambda", "inf", "--flux", "0.2", "--count", "1"]);
    let k: f64 = data_lines(&stdout(&inf))[0][3].parse().unwrap();
    assert!((k - 1.0 / 0.3).abs() < 1e-10);
    assert_eq!(abspin(&["secular", "--lambda", "1", "--m", "1"]).status.code(), Some(3));
}

#[test]
fn wavefunction_command() {
    let o = abspin(&["wavefunction", "--n", "3", "--flux", "0.2", "--points", "801"]);
    assert!(o.status.success());
    let rows = data_lines(&stdout(&o));
    assert_eq!(rows.len(), 801);
    let o = abspin(&["wavefunction", "--lambda", "1", "--n", "2", "--flux", "0.4", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"], 1);
}

#[test]
fn unwritable_output_fails() {
    let o = abspin(&["spectrum", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(1));
}
