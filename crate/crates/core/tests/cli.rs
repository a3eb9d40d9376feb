use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn circuit(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("circuits")
        .join(name)
}

fn qudstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn every_sample_circuit_checks_and_agrees_with_the_oracle() {
    for entry in std::fs::read_dir(circuit("")).unwrap() {
        let path = entry.unwrap().path();
        let p = path.to_str().unwrap();
        assert!(qudstab(&["check", p]).status.success(), "{p}");
        let out = qudstab(&["run", p, "--oracle"]);
        assert!(
            out.status.success(),
            "{p}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        for tr in json(&out)["trajectories"].as_array().unwrap() {
            assert!(tr["oracle_overlap"].as_f64().unwrap() > 1.0 - 1e-9, "{p}");
        }
    }
}

#[test]
fn teleportation_is_deterministic() {
    let out = qudstab(&["run", circuit("teleport_qutrit.qds").to_str().unwrap()]);
    let v = json(&out);
    let trs = v["trajectories"].as_array().unwrap();
    assert_eq!(trs.len(), 9);
    assert!(trs
        .iter()
        .all(|t| t["outcomes"]["out"] == 0 && t["probability"]["exact"] == "1/9"));
}

#[test]
fn output_is_byte_stable() {
    let file = circuit("d6_cosets.qds");
    let f = file.to_str().unwrap();
    for args in [
        vec!["run", f, "--emit-tableau"],
        vec!["run", f, "--mode", "sample", "--shots", "50", "--seed", "7"],
        vec![
            "run",
            f,
            "--mode",
            "fixed",
            "--fix",
            "even=2",
            "--emit-tableau",
        ],
    ] {
        let a = qudstab(&args);
        let b = qudstab(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_file_output() {
    let dir = std::env::temp_dir().join(format!("qudstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("out.json");
    let out = qudstab(&[
        "run",
        circuit("qubit_plus.qds").to_str().unwrap(),
        "--json",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["trajectories"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    let pair = circuit("ququart_pair.qds");
    let pair = pair.to_str().unwrap();
    assert_eq!(
        qudstab(&["run", pair, "--mode", "fixed", "--fix", "m=1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qudstab(&["run", pair, "--mode", "fixed", "--fix", "m=2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        qudstab(&["run", pair, "--mode", "fixed", "--fix", "nope=0"])
            .status
            .code(),
        Some(1)
    );
    let cosets = circuit("d6_cosets.qds");
    assert_eq!(
        qudstab(&["run", cosets.to_str().unwrap(), "--branch-cap", "3"])
            .status
            .code(),
        Some(3)
    );

    let bad = std::env::temp_dir().join(format!("qudstab-bad-{}.qds", std::process::id()));
    std::fs::write(&bad, "dim 4\nqudits 2\nM 0 2\nCX 0 5\n").unwrap();
    let out = qudstab(&["run", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":3:5: E004"), "{err}");
    assert!(err.contains(":4:6: E003"), "{err}");
}
