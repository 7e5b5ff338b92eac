use std::process::{Command, Output};

use rbpa_cli::output::parse_bfile;
use rbpa_core::poly_bernoulli::{multi_poly_bernoulli, MultiIndex};
use rbpa_core::rbpa::p_egf;

fn rbpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbpa")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = rbpa(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn seq_examples() {
    assert_eq!(
        stdout(&["seq", "p", "--r", "0", "--j", "1", "--n-max", "4", "--format", "bfile"]),
        "0 1\n1 1\n2 3\n3 13\n4 75\n"
    );
    assert_eq!(stdout(&["seq", "B", "--index", "2", "--n-max", "2", "--format", "csv"]), "0,1\n1,4\n2,14\n");
    assert_eq!(stdout(&["seq", "W", "--base", "3", "--n-max", "0"]), "0 1\n");
}

#[test]
fn seq_json_and_rationals() {
    let out = stdout(&["seq", "B", "--li", "1", "--n-max", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[1]["value"], "1/2");
    assert_eq!(v[2]["value"], "1/6");
    assert_eq!(stdout(&["seq", "U", "--li", "1", "--n-max", "1", "--format", "csv"]), "0,1\n1,-1/2\n");

    let refused = rbpa(&["seq", "B", "--li", "1", "--n-max", "2", "--format", "bfile"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("not an integer"));
}

#[test]
fn bfile_round_trip() {
    let text = stdout(&["seq", "p", "--r", "2", "--j", "3", "--n-max", "25"]);
    assert_eq!(parse_bfile(&text).unwrap(), p_egf(2, 3, 25).values);

    let text = stdout(&["seq", "B", "--index", "3,1,0", "--n-max", "15"]);
    let idx = MultiIndex::new(vec![3, 1, 0]).unwrap();
    let expect: Vec<_> = (0..=15).map(|n| multi_poly_bernoulli(&idx, n)).collect();
    assert_eq!(parse_bfile(&text).unwrap(), expect);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["seq", "B", "--index", "2,x", "--n-max", "3"][..],
        &["seq", "p", "--r", "1", "--n-max", "3"],
        &["seq", "Q", "--n-max", "3"],
        &["verify", "--ids", "NOPE"],
        &["verify", "--ids", "EQ6", "--param", "zz=1..2"],
        &["oracle", "--r", "0", "--j", "1", "--n-max", "20"],
        &["cycle", "p", "--r", "0", "--j", "1", "--n-max", "5"],
    ] {
        assert_eq!(rbpa(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_reports() {
    let out = stdout(&["verify", "--ids", "EQ6"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["pass"] == true));

    let out = stdout(&["verify", "--ids", "EQ9", "--param", "r=4", "--param", "j=2", "--param", "b=0", "--param", "n=3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);

    // diagnostic failures do not change the exit code
    let csv = stdout(&["verify", "--ids", "UREL,EQ13", "--format", "csv"]);
    assert!(csv.starts_with("id,params,lhs,rhs,pass,note\n"));
    assert!(csv.contains("false"));
}

#[test]
fn verify_all_summary_is_deterministic() {
    let a = stdout(&["verify", "all", "--profile", "quick"]);
    let b = stdout(&["verify", "all"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["profile"], "quick");
    assert_eq!(v["strict_failures"], 0);
}

#[test]
fn oracle_tables() {
    let out = stdout(&["oracle", "--r", "0", "--j", "1", "--n-max", "5"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    let out = stdout(&["oracle", "--r", "2", "--j", "0", "--n-max", "4"]);
    for (n, row) in out.lines().skip(1).enumerate() {
        assert_eq!(row, format!("{n},{p},{p},true", p = 1u32 << n));
    }
}

#[test]
fn cycle_examples() {
    let out = stdout(&["cycle", "p", "--r", "0", "--j", "1", "--n-max", "12"]);
    assert!(out.contains("1,3,3,5,1,3,3,5,1,3,3,5"));
    assert!(out.ends_with("PASS pattern 1,3,3,5\n"));
    assert!(stdout(&["cycle", "B", "--index", "2", "--n-max", "12"]).ends_with("PASS pattern 4,4,6,6\n"));
    assert!(stdout(&["cycle", "p", "--r", "1", "--j", "0", "--n-max", "12"]).ends_with("PASS constant 1\n"));
}

#[test]
fn egf_dump() {
    assert_eq!(stdout(&["egf", "--r", "0", "--j", "1", "--order", "3"]), "0,1\n1,1\n2,3\n3,13\n");
    assert_eq!(
        stdout(&["egf", "--r", "0", "--j", "2", "--order", "5", "--reciprocal"]),
        "0,1\n1,-2\n2,0\n3,4\n4,12\n5,28\n"
    );
}

#[test]
fn registry_table() {
    let out = stdout(&["registry"]);
    assert!(out.starts_with("id,diagnostic,lhs,rhs,title,statement\n"));
    assert!(out.lines().any(|l| l.starts_with("EQ13,true,")));
    assert!(out.lines().count() > 30);
}
