//! End-to-end checks of the installed binary: exit codes, formats, and
//! the enumeration-cap environment variable.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ffgrp"))
}

#[test]
fn order_exit_codes() {
    let out = bin()
        .args(["order", "--p", "2", "--mat", "0,1;1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("order: 3"));

    // singular input is a usage/input error
    let out = bin()
        .args(["order", "--p", "2", "--mat", "1,1;1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // malformed flags are clap usage errors
    let out = bin().args(["order", "--p"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_json_format() {
    let out = bin()
        .args(["--format", "json", "--qmax", "9", "bounds"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7); // q in {2, 3, 4, 5, 7, 8, 9}
    assert_eq!(rows[0]["main"], "696729600");
    assert_eq!(rows[6]["q"], 9);
    assert_eq!(rows[6]["main"], "42456960");
}

#[test]
fn cap_env_variable_is_honored() {
    let out = bin()
        .env("FFGRP_CAP", "10")
        .args(["jordan", "--group", "pgl:3:2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    // an explicit flag overrides the environment
    let out = bin()
        .env("FFGRP_CAP", "10")
        .args(["--cap", "200", "jordan", "--group", "pgl:3:2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn jordan_psl_2_5() {
    let out = bin()
        .args(["--format", "json", "jordan", "--group", "psl:2:5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 60);
    assert_eq!(v["jordan_constant"], 60); // A_5 is simple
}

#[test]
fn verify_single_suite_exit_zero() {
    let out = bin()
        .args(["verify", "--suite", "no-normal-abelian"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("jordan pgl(3,2)"), "{text}");
    assert!(text.contains("ALL PASS"), "{text}");
}
