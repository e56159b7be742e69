use std::process::Command;

use brieskorn::cli::format::{from_csv, from_markdown, tabulate};
use brieskorn::cli::{run, Cache, TOOL_VERSION};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("brieskorn").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = invoke(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn envelope_shape() {
    let v = json_of(&["--no-cache", "invariants", "--exponents", "6,3,2,2,2"]);
    assert_eq!(v["schema"], 1);
    for key in ["request", "result", "provenance", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["provenance"]["tool_version"], TOOL_VERSION);
    assert_eq!(v["provenance"]["cached"], false);
    assert_eq!(v["result"]["signature"], "8");
}

#[test]
fn signature_methods_agree() {
    let values: Vec<Value> = ["lattice", "dp", "zagier"]
        .iter()
        .map(|m| {
            json_of(&[
                "--no-cache",
                "--method",
                m,
                "signature",
                "--exponents",
                "12,3,2,2,2",
            ])["result"]["value"]
                .clone()
        })
        .collect();
    assert!(values.iter().all(|v| *v == values[0]), "{values:?}");
}

#[test]
fn family_commands() {
    let v = json_of(&[
        "--no-cache",
        "classify",
        "--family",
        "theorem-c",
        "--n",
        "2",
        "--k",
        "8",
    ]);
    assert_eq!(v["result"]["class"], "class K2");
    assert_eq!(v["result"]["offset"], "1");
    let v = json_of(&[
        "--no-cache",
        "cover-homology",
        "--exponents",
        "3,2,2,2",
        "--fold",
        "2,5",
    ]);
    assert_eq!(v["result"][0]["display"], "Z_3");
    assert_eq!(v["result"][1]["display"], "0");
    let v = json_of(&["--no-cache", "bp-order", "--m", "4"]);
    assert_eq!(v["result"]["order"], "8128");
}

#[test]
fn payload_is_deterministic() {
    let args = ["--no-cache", "tau", "--k", "1,2,3,48"];
    let a = json_of(&args);
    let b = json_of(&args);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["request"], b["request"]);
}

#[test]
fn exit_codes() {
    let (code, out, _) = invoke(&["--no-cache", "invariants", "--exponents", "1,2,3"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["name"], "InvalidExponent");

    let (code, _, err) = invoke(&["invariants", "--exponents", "2,3", "--family", "theorem-c"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    assert_eq!(invoke(&["no-such-command"]).0, 2);
    assert_eq!(invoke(&["--budget", "zero", "bp-order", "--m", "2"]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}

#[test]
fn budget_exceeded_is_a_computation_error() {
    let (code, out, _) = invoke(&[
        "--no-cache",
        "--budget",
        "10",
        "--method",
        "lattice",
        "signature",
        "--exponents",
        "12,3,2,2,2",
    ]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["name"], "BudgetExceeded");
}

#[test]
fn tabular_formats_round_trip() {
    let json = json_of(&[
        "--no-cache",
        "--format",
        "json",
        "table",
        "--dim",
        "7",
        "--k",
        "1,6,7",
    ]);
    let expected = tabulate(&json["result"]);

    let (code, csv, _) = invoke(&[
        "--no-cache",
        "--format",
        "csv",
        "table",
        "--dim",
        "7",
        "--k",
        "1,6,7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(from_csv(&csv).unwrap(), expected);

    let (code, md, _) = invoke(&["--no-cache", "table", "--dim", "7", "--k", "1,6,7"]);
    assert_eq!(code, 0);
    assert_eq!(from_markdown(&md).unwrap(), expected);
    assert!(md.contains("| 7 | 28 | 1 | 1/28 |"), "{md}");
}

#[test]
fn nested_payload_round_trips_through_csv() {
    let json = json_of(&[
        "--no-cache",
        "--format",
        "json",
        "classify",
        "--family",
        "sphere-product",
        "--n",
        "2",
        "--k",
        "3",
        "--i",
        "2",
    ]);
    let expected = tabulate(&json["result"]);
    let (_, csv, _) = invoke(&[
        "--no-cache",
        "--format",
        "csv",
        "classify",
        "--family",
        "sphere-product",
        "--n",
        "2",
        "--k",
        "3",
        "--i",
        "2",
    ]);
    assert_eq!(from_csv(&csv).unwrap(), expected);
}

#[test]
fn cache_hit_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "invariants", "--exponents", "10,5,2,2,2"];
    let first = json_of(&args);
    assert_eq!(first["provenance"]["cached"], false);
    let second = json_of(&args);
    assert_eq!(second["provenance"]["cached"], true);
    assert_eq!(first["result"], second["result"]);

    let canonical = serde_json::to_string(&first["request"]).unwrap();
    let path = Cache::new(dir.path(), TOOL_VERSION).entry_path(&canonical);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("36", "37", 1)).unwrap();
    let third = json_of(&args);
    assert_eq!(third["provenance"]["cached"], false);
    assert_eq!(third["result"], first["result"]);

    let other_version = Cache::new(dir.path(), "0.0.0-other");
    assert!(other_version.get(&canonical).is_none());
}

#[test]
fn no_cache_skips_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "--no-cache", "bp-order", "--m", "3"];
    json_of(&args);
    assert_eq!(json_of(&args)["provenance"]["cached"], false);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn binary_reads_cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_brieskorn");
    let call = || {
        let o = Command::new(exe)
            .args(["bp-order", "--m", "2"])
            .env(brieskorn::cli::CACHE_ENV, dir.path())
            .output()
            .unwrap();
        assert!(o.status.success());
        serde_json::from_slice::<Value>(&o.stdout).unwrap()
    };
    assert_eq!(call()["provenance"]["cached"], false);
    assert_eq!(call()["provenance"]["cached"], true);
}

#[test]
fn binary_exit_statuses() {
    let exe = env!("CARGO_BIN_EXE_brieskorn");
    let status = |args: &[&str]| Command::new(exe).args(args).output().unwrap().status.code();
    assert_eq!(status(&["--no-cache", "bp-order", "--m", "2"]), Some(0));
    assert_eq!(
        status(&["--no-cache", "signature", "--exponents", "0,2,2"]),
        Some(1)
    );
    assert_eq!(status(&["bogus"]), Some(2));
}

#[test]
fn verify_with_tiny_budget_skips() {
    let (code, out, err) = invoke(&["--budget", "1", "verify", "--corpus", "5"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let statuses: Vec<&str> = v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert_eq!(statuses.len(), 11);
    assert!(statuses.contains(&"SKIP"), "{statuses:?}");
    assert!(!statuses.contains(&"FAIL"), "{statuses:?}\n{err}");
    assert_eq!(code, 0);
    assert!(err.lines().any(|l| l.starts_with("SKIP ")));
}
