use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn etaq(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_etaq"));
    cmd.args(args).env_remove("ETAQ_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("ETAQ_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn expand_json() {
    let out = etaq(&["expand", "1^24", "--limit", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["offset"], "1");
    let values: Vec<&str> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "-24", "252", "-1472"]);
}

#[test]
fn verify_exit_codes() {
    let pass = etaq(&["verify", "L52-B", "--limit", "100"], None);
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(json(&pass)["status"], "PASS");

    let fail = etaq(&["verify", "NC-L52-A-SIGN", "--limit", "100"], None);
    assert_eq!(fail.status.code(), Some(1));
    let v = json(&fail);
    assert_eq!(v["status"], "FAIL");
    assert_eq!(v["reports"][0]["mismatches"][0]["n"], "5");

    assert_eq!(etaq(&["verify", "NO-SUCH-ID"], None).status.code(), Some(4));
    assert_eq!(etaq(&["verify", "L52-B", "--limit", "-3"], None).status.code(), Some(2));
    assert_eq!(etaq(&["expand", "2^x"], None).status.code(), Some(2));
    assert_eq!(etaq(&["bogus"], None).status.code(), Some(2));
    assert_eq!(etaq(&["--help"], None).status.code(), Some(0));
}

#[test]
fn vanishing_and_scan() {
    let out = etaq(
        &["vanishing", "--family", "L133-2", "--limit", "2000", "--format", "json"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let not_three_squares = (1..=2000u64)
        .filter(|&n| {
            let mut k = n;
            while k % 4 == 0 {
                k /= 4;
            }
            k % 8 == 7
        })
        .count();
    assert_eq!(json(&out)["reports"][0]["zeros"], not_three_squares);

    let out = etaq(&["scan", "--target", "f2", "--limit", "3000"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["zeros"].as_array().unwrap().len(), 0);

    let out = etaq(&["scan", "--target", "g1", "--from", "1000", "--limit", "1200"], None);
    assert_eq!(out.status.code(), Some(1), "1120 is the last n with G1 <= 4/3");
    assert_eq!(json(&out)["violations"], serde_json::json!([1120]));
}

#[test]
fn sturm_table() {
    let out = etaq(
        &["sturm", "--weight", "3/2", "--level", "16", "--format", "table"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "3");
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        etaq(&["cache", "list"], None).status.code(),
        Some(2),
        "no cache dir configured"
    );

    let warm = etaq(&["cache", "warm", "1^-1", "--limit", "200"], Some(dir.path()));
    assert_eq!(warm.status.code(), Some(0));

    let list = json(&etaq(&["cache", "list"], Some(dir.path())));
    assert_eq!(list["entries"].as_array().unwrap().len(), 1);
    assert_eq!(list["entries"][0]["spec"], "1^-1");

    // served from the cache, identical to a fresh expansion
    let cached = json(&etaq(&["expand", "1^-1", "--limit", "150"], Some(dir.path())));
    let fresh = json(&etaq(&["expand", "1^-1", "--limit", "150"], None));
    assert_eq!(cached, fresh);
    assert_eq!(cached["coefficients"][100]["value"], "190569292");

    let cleared = json(&etaq(&["cache", "clear"], Some(dir.path())));
    assert_eq!(cleared["removed"], "1");
    assert_eq!(
        json(&etaq(&["cache", "list"], Some(dir.path())))["entries"],
        serde_json::json!([])
    );
}

#[test]
fn jobs_do_not_change_results() {
    let one = etaq(
        &["vanishing", "--family", "L95-3", "--limit", "3000", "--jobs", "1"],
        None,
    );
    let four = etaq(
        &["vanishing", "--family", "L95-3", "--limit", "3000", "--jobs", "4"],
        None,
    );
    let strip = |v: Value| {
        let mut v = v;
        v["reports"][0]["elapsed_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(json(&one)), strip(json(&four)));
}
