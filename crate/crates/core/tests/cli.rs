use std::process::{Command, Output};

use theta_crystal::report::{Report, Status};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta-crystal"))
        .args(args)
        .env_remove("THETA_CRYSTAL_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    let r = Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).expect("valid JSON report");
    (out.status.code().unwrap(), r)
}

#[test]
fn group_passes_with_exit_zero() {
    let (code, r) = json(&["group"]);
    assert_eq!(code, 0);
    assert_eq!(r.command, "group");
    assert!(r.claims.iter().any(|c| c.id == "group.order"));
    assert_eq!(r.count(Status::Pass), r.claims.len());
}

#[test]
fn text_output_ends_with_summary() {
    let out = run(&["toric", "--max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("toric max=4"));
    assert!(s.trim_end().ends_with("0 fail, 0 inconclusive"), "{s}");
}

#[test]
fn ehrhart_json_claims() {
    let (code, r) = json(&["ehrhart", "--max", "16"]);
    assert_eq!(code, 0);
    assert_eq!(r.params["max"], "16");
    let values = r.claims.iter().find(|c| c.id == "ehrhart.values").unwrap();
    assert_eq!(values.status, Status::Pass);
}

#[test]
fn failed_claim_gives_exit_one() {
    let (code, r) = json(&["character", "--degree", "14"]);
    assert_eq!(code, 1);
    let failed: Vec<_> = r.claims.iter().filter(|c| c.status == Status::Fail).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.note.is_some()), "every failure carries an explanation");
    let gauss = r.claims.iter().find(|c| c.id == "character.k14.gauss_sum").unwrap();
    assert_eq!(gauss.status, Status::Pass);
}

#[test]
fn jacobian_reports_certified_nonzero_value() {
    let (code, r) = json(&["jacobian", "--cutoff", "7/2"]);
    let get = |id: &str| r.claims.iter().find(|c| c.id == id).unwrap().status;
    assert_eq!(get("jacobian.excludes_zero"), Status::Pass);
    assert_eq!(get("jacobian.n3"), Status::Pass);
    assert_eq!(get("jacobian.q_7_2"), Status::Pass);
    assert_eq!(r.params["cutoff"], "7/2");
    // the printed value is not reproduced, so the command exits 1
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_give_exit_two() {
    for args in [
        &["rep", "--degree", "3"][..],
        &["jacobian", "--cutoff", "abc"],
        &["jacobian", "--cutoff", "1/0"],
        &["frobnicate"],
        &["group", "--threads", "0"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn thread_env_is_validated() {
    for v in ["0", "many"] {
        let out = Command::new(env!("CARGO_BIN_EXE_theta-crystal"))
            .arg("group")
            .env("THETA_CRYSTAL_THREADS", v)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "{v}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_theta-crystal"))
        .arg("group")
        .env("THETA_CRYSTAL_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
