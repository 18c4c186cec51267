use std::process::Command;

use serde_json::Value;

fn deligne(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_deligne")).args(args).arg("--json").env_remove("DELIGNE_SEED").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn weil_example() {
    let (code, v, _) = deligne(&["weil", "t^2 + 1", "(t - 1)/t", "--over", "GF(5)"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "weil");
    assert_eq!(v["field"], "GF(5)");
    assert_eq!(v["result"]["product"], "1");
    assert_eq!(v["ok"], true);
    assert!(v.get("duration_ms").is_none());
}

#[test]
fn pair_over_q() {
    let (code, v, _) = deligne(&["pair", "t over QQ", "(t-1)/(t-2) over QQ"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["pairing"], "1/2");
    assert_eq!(v["result"]["swapped"], "1/2");
}

#[test]
fn timing_only_on_request() {
    let (_, v, _) = deligne(&["heisenberg", "Z2", "Z3", "--timing"]);
    assert!(v["duration_ms"].as_f64().unwrap() >= 0.0);
    assert_eq!(v["result"]["order"], 6);
    assert_eq!(v["result"]["abelian"], true);
}

#[test]
fn theta_compare_reports_class() {
    let (code, v, _) = deligne(&["theta-compare", "x0*y1 - x1*y0", "x0*y1^2 - x1*y0^2", "--over", "GF(3)"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["class"], "O(3)");
    let (_, v, _) = deligne(&["theta-compare", "x0*y1 - x1*y0", "x0*y1^2 - x1*y0^2", "--over", "GF(3)", "--base", "a1"]);
    assert_eq!(v["result"]["class"], "O");
}

#[test]
fn corr_compose_with_check() {
    let (code, v, _) = deligne(&[
        "corr", "compose", "x0*y1 - x1*y0 - x1*y1", "x0*y1^2 - x1*y0^2", "--on", "(2) + (t^2 + 2) - 3*(inf)", "--over", "GF(5)",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["checks"][0]["pass"], true);
    assert_eq!(v["result"]["fiber_degree"], 1);
}

#[test]
fn picard_seed_from_env_and_flag() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_deligne"));
        c.args(["picard", "coker", "--json"]);
        if let Some(f) = flag {
            c.args(["--seed", f]);
        }
        match env {
            Some(e) => c.env("DELIGNE_SEED", e),
            None => c.env_remove("DELIGNE_SEED"),
        };
        let out = c.output().unwrap();
        (out.status.code().unwrap(), serde_json::from_slice::<Value>(&out.stdout).unwrap_or(Value::Null))
    };
    let (code, v) = run(Some("17"), None);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 17);
    assert_eq!(run(None, Some("17")).1, v);
    assert_eq!(run(None, None).1["seed"], 0);
    assert_eq!(run(Some("x"), None).0, 2);
}

#[test]
fn picard_explicit_matrices() {
    let m = r#"{"d_a": [[2]], "d_b": [[4]], "f1": [[1]], "f0": [[2]]}"#;
    let (code, v, _) = deligne(&["picard", "coker", "--matrices", m]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["coker_of_pi0"], "Z/2");
    let bad = r#"{"d_a": [[2]], "d_b": [[4]], "f1": [[1]], "f0": [[1]]}"#;
    let (code, v, _) = deligne(&["picard", "coker", "--matrices", bad]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "math");
}

#[test]
fn fixtures_feed_other_commands() {
    let (_, list, _) = deligne(&["fixtures"]);
    assert!(list["result"]["diagonal"].is_string());
    let (_, v, _) = deligne(&["fixtures", "frobenius"]);
    let frob = v["result"]["value"].as_str().unwrap().to_string();
    let (code, v, _) = deligne(&["corr", "act", &frob, "(a) - (inf)"]);
    assert_eq!(code, 0, "{v}");
    let (_, v, _) = deligne(&["fixtures", "chain-map"]);
    let m = v["result"]["value"].to_string();
    assert_eq!(deligne(&["picard", "coker", "--matrices", &m]).0, 0);
}

#[test]
fn errors_exit_two_with_columns() {
    let (code, v, _) = deligne(&["weil", "t + * 2", "t", "--over", "GF(5)"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["column"], 5);
    let (code, v, _) = deligne(&["pair", "t over GF(5)", "t + 1 over GF(7)"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("mismatch"));
    let (code, v, _) = deligne(&["pair", "t", "t + 1", "--over", "GF(5)"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "math");
    let out = Command::new(env!("CARGO_BIN_EXE_deligne")).args(["weil", "t"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_deligne")).args(["weil", "t", "1/t"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("missing field"));
}

#[test]
fn parse_subcommand() {
    let (_, v, _) = deligne(&["parse", "t^2+1 over GF(3)"]);
    assert_eq!(v["result"]["kind"], "point");
    assert_eq!(v["result"]["canonical"], "(t^2 + 1)");
}
