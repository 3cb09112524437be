//! End-to-end runs of the command-line binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braided-fock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn read(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_default_braiding_passes() {
    let out = run(&["verify", "--suite", "braiding"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["config"]["braiding"], "std-hecke");
    let ids: Vec<&str> = r["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.contains(&"braiding.std-hecke-2.braid"));
}

#[test]
fn report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--braiding",
        "flip",
        "--n",
        "3",
        "--suite",
        "double",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let r = read(&path);
    assert!(r["records"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["id"] == "double.flip-3.hecke.bosonic.gl-commutators"));
}

#[test]
fn poincare_table_has_classical_column() {
    let out = run(&["poincare", "--n", "3", "--kmax", "5"]);
    assert!(out.status.success());
    let r = report(&out);
    for row in r["data"].as_array().unwrap() {
        assert_eq!(row["dims"], row["classical"]);
    }
}

#[test]
fn export_round_trips_through_table_loading() {
    let dir = tempfile::tempdir().unwrap();
    for braiding in [
        ["std-hecke", "3"],
        ["bmw-orth", "3"],
        ["bmw-symp", "2"],
        ["flip", "2"],
        ["superflip-1-1", "2"],
    ] {
        let path = dir.path().join(format!("{}.json", braiding[0]));
        let p = path.to_str().unwrap();
        let out = run(&[
            "export",
            "--braiding",
            braiding[0],
            "--n",
            braiding[1],
            "--out",
            p,
        ]);
        assert!(out.status.success(), "export {braiding:?}");
        let out = run(&["verify", "--table", p, "--suite", "braiding"]);
        assert!(
            out.status.success(),
            "reload {braiding:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn specialized_export_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("special.json");
    let p = path.to_str().unwrap();
    assert!(run(&[
        "export",
        "--braiding",
        "bmw-orth",
        "--n",
        "3",
        "--q",
        "2",
        "--out",
        p
    ])
    .status
    .success());
    assert!(run(&["verify", "--table", p, "--suite", "braiding"])
        .status
        .success());
}

#[test]
fn repr_reports_one_based_matrices() {
    let out = run(&["repr", "--degree", "2", "--flavor", "bosonic"]);
    assert!(out.status.success());
    let r = report(&out);
    let data = &r["data"][0];
    assert_eq!(data["basis"].as_array().unwrap().len(), 3);
    assert_eq!(data["l"][0]["i"], 1);
    assert_eq!(data["l"][0]["matrix"]["rows"], 3);
}

#[test]
fn corrupted_table_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = include_str!("../tables/bmw-symplectic-2.json").replacen("\"i\": 1", "\"i\": 9", 1);
    std::fs::write(&path, text).unwrap();
    let out = run(&["verify", "--table", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(report(&out)["error"]
        .as_str()
        .unwrap()
        .contains("invalid braiding table"));
}

#[test]
fn non_generic_q_is_surfaced() {
    let out = run(&["verify", "--q", "0"]);
    assert!(!out.status.success());
    assert!(report(&out)["error"]
        .as_str()
        .unwrap()
        .contains("not generic"));
}

#[test]
fn bosonic_symplectic_double_is_refused() {
    let out = run(&[
        "verify",
        "--braiding",
        "bmw-symp",
        "--flavor",
        "bosonic",
        "--suite",
        "double",
    ]);
    assert!(!out.status.success());
    assert!(report(&out)["error"].is_string());
}

#[test]
fn currents_suite_runs_with_window() {
    let out = run(&[
        "verify",
        "--braiding",
        "flip",
        "--suite",
        "currents",
        "--window",
        "2",
    ]);
    assert!(out.status.success());
    let r = report(&out);
    assert!(r["records"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["id"] == "currents.flip-2.rational.yang"));
}
