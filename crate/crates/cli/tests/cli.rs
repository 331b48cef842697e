use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use qfht_core::hilbert::build_rule;
use qfht_core::io::{read_kernel_table, read_signal, write_signal};
use qfht_core::specfun::ln_gamma;
use qfht_core::{Quaternion, RadialSignal};
use tempfile::TempDir;

const ALPHA: f64 = 1.5;

fn qfht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfht"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A 64-node signal with all four components populated.
fn sample_signal(dir: &TempDir) -> PathBuf {
    let rule = Arc::new(build_rule(ALPHA, 64).unwrap());
    let f = RadialSignal::from_fn(rule, |x| {
        let e = (-0.5 * x).exp();
        Quaternion::new(e, x * e, (1.0 - x) * e * 0.5, (0.3 * x).sin() * e)
    });
    let path = dir.path().join("in.csv");
    let mut buf = Vec::new();
    write_signal(&mut buf, &f).unwrap();
    fs::write(&path, buf).unwrap();
    path
}

fn load(path: &Path) -> RadialSignal {
    read_signal(fs::File::open(path).unwrap(), ALPHA).unwrap()
}

/// Distance in the weighted norm of the signal space. Node-wise differences
/// are not meaningful at the far nodes, where the weights underflow.
fn dist(a: &RadialSignal, b: &RadialSignal) -> f64 {
    a.sub(b).unwrap().norm()
}

#[test]
fn identity_parameter_returns_the_input() {
    let dir = TempDir::new().unwrap();
    let input = sample_signal(&dir);
    let out = dir.path().join("out.csv");
    let o = qfht(&["transform", "--theta", "1,0,0,0", "--alpha", "1.5", "--input", s(&input), "--path", "spectral", "--output", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read(&input).unwrap(), fs::read(&out).unwrap());
}

#[test]
fn unit_parameter_then_conjugate_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = sample_signal(&dir);
    let mid = dir.path().join("mid.csv");
    let back = dir.path().join("back.csv");
    let t = Quaternion::new(0.6, 0.0, 0.8, 0.0);
    let (t, tc) = (t.to_string(), t.conj().to_string());
    let o = qfht(&["transform", "--theta", &t, "--alpha", "1.5", "--input", s(&input), "--output", s(&mid)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = qfht(&["transform", "--theta", &tc, "--alpha", "1.5", "--input", s(&mid), "--output", s(&back)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dist(&load(&input), &load(&back)) < 1e-10);
    assert!(dist(&load(&input), &load(&mid)) > 1e-3);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let input = sample_signal(&dir);
    for path in ["spectral", "quadrature", "bargmann"] {
        let a = dir.path().join(format!("{path}-a.csv"));
        let b = dir.path().join(format!("{path}-b.csv"));
        for out in [&a, &b] {
            let o = qfht(&["transform", "--theta", "0.3,-0.2,0.5,0.1", "--alpha", "1.5", "--input", s(&input), "--path", path, "--output", s(out)]);
            assert!(o.status.success(), "{path}: {}", String::from_utf8_lossy(&o.stderr));
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{path}");
    }
}

#[test]
fn all_three_paths_agree_on_a_file() {
    let dir = TempDir::new().unwrap();
    let input = sample_signal(&dir);
    let mut results = Vec::new();
    for path in ["spectral", "quadrature", "bargmann"] {
        let out = dir.path().join(format!("{path}.csv"));
        let o = qfht(&["transform", "--theta", "0.3,-0.2,0.5,0.1", "--alpha", "1.5", "--input", s(&input), "--path", path, "-N", "40", "--output", s(&out)]);
        assert!(o.status.success(), "{path}: {}", String::from_utf8_lossy(&o.stderr));
        results.push(load(&out));
    }
    assert!(dist(&results[0], &results[1]) < 1e-8);
    assert!(dist(&results[0], &results[2]) < 1e-8);
}

#[test]
fn kernel_table_at_zero_parameter() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("k.csv");
    let o = qfht(&["kernel-table", "--theta", "0,0,0,0", "--alpha", "1.5", "--xmin", "0.5", "--xmax", "4", "--points", "5", "--output", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("x,y,Re,I-part,unit-x,unit-y,unit-z\n"));
    let rows = read_kernel_table(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 25);
    let g = (-ln_gamma(2.5).unwrap()).exp();
    for r in rows {
        let expect = r.x.powf(1.5) * (-r.x).exp() * g;
        assert!((r.re - expect).abs() < 1e-14 && r.im == 0.0);
    }
}

#[test]
fn bargmann_forward_then_inverse() {
    let dir = TempDir::new().unwrap();
    let input = sample_signal(&dir);
    let coeffs = dir.path().join("c.json");
    let back = dir.path().join("back.csv");
    let o = qfht(&["bargmann", "--input", s(&input), "--alpha", "1.5", "--out", s(&coeffs)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(&coeffs).unwrap().starts_with("[["));
    let o = qfht(&["bargmann", "--inverse", "--coeffs", s(&coeffs), "--unit", "j", "--alpha", "1.5", "-M", "64", "--out", s(&back)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dist(&load(&input), &load(&back)) < 1e-10);
}

#[test]
fn verify_passes_with_default_seed() {
    let o = Command::new(env!("CARGO_BIN_EXE_qfht"))
        .arg("verify")
        .env_remove("QFHT_SEED")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = report.as_array().unwrap();
    assert_eq!(entries.len(), 12);
    for e in entries {
        for key in ["property", "max_deviation", "tolerance", "pass"] {
            assert!(e.get(key).is_some(), "missing {key}");
        }
        assert_eq!(e["pass"], true);
    }
}

#[test]
fn bad_configuration_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let input = sample_signal(&dir);
    let out = dir.path().join("o.csv");
    let cases: Vec<Vec<&str>> = vec![
        vec!["transform", "--theta", "1.2,0,0,0", "--alpha", "1.5", "--input", s(&input), "--output", s(&out)],
        vec!["transform", "--theta", "0.5,0,0", "--alpha", "1.5", "--input", s(&input)],
        vec!["transform", "--theta", "0.5,0,0,0", "--alpha", "-1", "--input", s(&input)],
        vec!["transform", "--theta", "0.5,0,0,0", "--alpha", "2.5", "--input", s(&input)],
        vec!["transform", "--theta", "0.5,0,0,0", "--alpha", "1.5", "--input", "/nonexistent/in.csv"],
        vec!["transform", "--theta", "0.5,0,0,0", "--alpha", "1.5", "--input", s(&input), "-N", "64"],
        vec!["transform", "--theta", "0.5,0,0,0", "--alpha", "1.5", "--input", s(&input), "--path", "fourier"],
        vec!["kernel-table", "--theta", "1,0,0,0", "--alpha", "1.5"],
        vec!["kernel-table", "--theta", "0.5,0,0,0", "--alpha", "1.5", "--xmin", "0"],
        vec!["bargmann", "--inverse", "--coeffs", s(&input), "--alpha", "1.5"],
        vec!["bargmann", "--alpha", "1.5"],
    ];
    for args in cases {
        let o = qfht(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_qfht"))
        .arg("verify")
        .env("QFHT_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
