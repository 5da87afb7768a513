//! End-to-end CLI checks: config validation, determinism of simulated
//! ensembles and retrodiction reports, and the PSD table.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_retrodict"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("retrodict-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

const SINGLE: &str = r#"{
    "cavity": {"epsilon": 1.0},
    "oscillators": [
        {"omega_hz": 125e3, "gamma_hz": 2e3, "cooperativity": 3.0, "nu": 1.0}
    ],
    "grid": {"fs_hz": 2.6e6, "tf_s": 0.4e-3}
}"#;

#[test]
fn validate_config_reports_and_rejects() {
    let dir = temp_dir("validate");
    let good = write_config(&dir, "good.json", SINGLE);
    let out = bin()
        .args(["validate-config", "--config"])
        .arg(&good)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("config ok"), "stdout: {text}");
    assert!(text.contains("C = 3.0000"));

    let bad = write_config(
        &dir,
        "bad.json",
        &SINGLE.replace("\"epsilon\": 1.0", "\"epsilon\": -0.5"),
    );
    let out = bin()
        .args(["validate-config", "--config"])
        .arg(&bad)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("epsilon"), "stderr: {err}");
}

#[test]
fn simulate_and_retrodict_are_byte_identical_across_runs() {
    let dir = temp_dir("determinism");
    let config = write_config(&dir, "config.json", SINGLE);

    let run = |tag: &str| -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        let records = dir.join(format!("records-{tag}.bin"));
        let status = bin()
            .args(["simulate", "--shots", "8", "--seed", "7", "--state", "thermal:1.0"])
            .arg("--config")
            .arg(&config)
            .arg("--out")
            .arg(&records)
            .status()
            .unwrap();
        assert!(status.success());
        let out_dir = dir.join(format!("report-{tag}"));
        let status = bin()
            .args(["retrodict", "--family", "ols", "--shots", "64", "--seed", "9"])
            .args(["--simulate", "--state", "thermal:1.0"])
            .arg("--config")
            .arg(&config)
            .arg("--out-dir")
            .arg(&out_dir)
            .status()
            .unwrap();
        assert!(status.success());
        (
            fs::read(&records).unwrap(),
            fs::read(out_dir.join("estimates.csv")).unwrap(),
            fs::read(out_dir.join("inferred.json")).unwrap(),
        )
    };
    let a = run("a");
    let b = run("b");
    assert_eq!(a.0, b.0, "record containers differ between identical runs");
    assert_eq!(a.1, b.1, "estimate tables differ between identical runs");
    assert_eq!(a.2, b.2, "inferred reports differ between identical runs");
}

#[test]
fn psd_of_simulated_records_has_unit_floor_and_peak() {
    let dir = temp_dir("psd");
    let config = write_config(&dir, "config.json", SINGLE);
    let records = dir.join("records.bin");
    assert!(bin()
        .args(["simulate", "--shots", "12", "--seed", "3", "--state", "thermal:2.5"])
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(&records)
        .status()
        .unwrap()
        .success());
    let out = dir.join("psd.csv");
    assert!(bin()
        .args(["psd", "--segments", "512"])
        .arg("--config")
        .arg(&config)
        .arg("--records")
        .arg(&records)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap()
        .success());
    let table = fs::read_to_string(&out).unwrap();
    let mut rows: Vec<(f64, f64)> = Vec::new();
    for line in table.lines().skip(1) {
        let mut it = line.split(',');
        let f: f64 = it.next().unwrap().parse().unwrap();
        let v: f64 = it.next().unwrap().parse().unwrap();
        rows.push((f, v));
    }
    // floor near 1 away from the resonance, peak at 125 kHz
    let floor: Vec<f64> = rows
        .iter()
        .filter(|(f, _)| *f > 400e3)
        .map(|(_, v)| *v)
        .collect();
    let floor_mean = floor.iter().sum::<f64>() / floor.len() as f64;
    assert!(
        (floor_mean - 1.0).abs() < 0.1,
        "shot floor = {floor_mean}, expected ~1"
    );
    let peak = rows
        .iter()
        .filter(|(f, _)| (*f - 125e3).abs() < 10e3)
        .map(|(_, v)| *v)
        .fold(0.0f64, f64::max);
    assert!(peak > 10.0, "no oscillator peak: {peak}");
}

#[test]
fn retrodict_supports_all_filter_families() {
    let dir = temp_dir("families");
    let config = write_config(&dir, "config.json", SINGLE);
    for family in ["ols", "exp", "gls", "avg"] {
        let out_dir = dir.join(format!("report-{family}"));
        let out = bin()
            .args(["retrodict", "--family", family, "--gamma", "auto"])
            .args(["--simulate", "--shots", "48", "--seed", "11", "--state", "thermal:1.0"])
            .arg("--config")
            .arg(&config)
            .arg("--out-dir")
            .arg(&out_dir)
            .args(["--dump-bank"])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "family {family}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out_dir.join("bank.csv").exists());
        assert!(out_dir.join("inferred.json").exists());
    }
}

#[test]
fn retrodict_rejects_mismatched_records() {
    let dir = temp_dir("mismatch");
    let config = write_config(&dir, "config.json", SINGLE);
    let other = write_config(
        &dir,
        "other.json",
        &SINGLE.replace("2.6e6", "3.0e6"),
    );
    let records = dir.join("records.bin");
    assert!(bin()
        .args(["simulate", "--shots", "4", "--seed", "1"])
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(&records)
        .status()
        .unwrap()
        .success());
    let out = bin()
        .args(["retrodict", "--family", "ols"])
        .arg("--config")
        .arg(&other)
        .arg("--records")
        .arg(&records)
        .arg("--out-dir")
        .arg(dir.join("report"))
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn sweep_sql_writes_table_and_optima() {
    let dir = temp_dir("sweep");
    let config = write_config(&dir, "config.json", SINGLE);
    let out = dir.join("sweep.csv");
    let run = bin()
        .args([
            "sweep-sql",
            "--c-range",
            "1:10",
            "--gamma-range",
            "1:20",
            "--points-per-decade",
            "5",
        ])
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(run.status.success());
    let table = fs::read_to_string(&out).unwrap();
    assert!(table.lines().count() > 30);
    let optima = fs::read_to_string(out.with_extension("optima.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&optima).unwrap();
    assert!((doc["asymptote"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(doc["optima"].as_array().unwrap().len() >= 5);
}
