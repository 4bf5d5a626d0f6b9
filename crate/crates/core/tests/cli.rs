// SPDX-License-Identifier: MIT OR Apache-2.0

//! The `cpgeom` binary: exit codes, error reporting and reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn cpgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpgeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn missing_input_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rsa.json");
    let missing = dir.path().join("nope.cpb");

    let o = cpgeom(&["rsa", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ConfigError"));

    let o = cpgeom(&["rsa", "--input", s(&missing), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("IoError"));
    assert!(!out.exists());
}

#[test]
fn unknown_flag_is_usage_error() {
    let o = cpgeom(&["rsa", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn synth_then_rsa() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("b.cpb");
    let doc = dir.path().join("rsa.json");
    let o = cpgeom(&["synth", "--n-layers", "5", "--out", s(&bundle)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let o = cpgeom(&[
        "rsa", "--input", s(&bundle), "--permutations", "200", "--out", s(&doc),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("CP>Cont 4/4"));

    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&doc).unwrap()).unwrap();
    assert_eq!(v["command"], "rsa");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("b.cpb");
    assert!(cpgeom(&["synth", "--n-layers", "4", "--out", s(&bundle)]).status.success());
    // the output path is echoed in the document, so every run reuses it
    let doc = dir.path().join("h4.json");
    let mut docs = Vec::new();
    for workers in ["1", "3", "3"] {
        let o = cpgeom(&["h4", "--input", s(&bundle), "--workers", workers, "--out", s(&doc)]);
        assert!(o.status.success());
        docs.push(std::fs::read(&doc).unwrap());
    }
    assert!(docs[0] == docs[1], "worker count changed the document");
    assert!(docs[1] == docs[2], "repeat run changed the document");
}
