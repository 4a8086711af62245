use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn witches(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witches")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON error")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn posterior_after_four_black_hats() {
    let text = stdout(&witches(&["posterior", "--scenario", "witches", "--seq", "NNNN"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["V7   16/17 ≈ 0.941176", "V14  1/17 ≈ 0.0588235"]);
}

#[test]
fn posterior_json_matches_session_state() {
    let cli: Value = serde_json::from_str(&stdout(&witches(&["posterior", "--seq", "NNNN", "--json"]))).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_witches"))
        .arg("stdio")
        .env_remove("WITCHES_SESSION_DIR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut stdin = child.stdin.take().unwrap();
        writeln!(stdin, r#"{{"op":"create_session","scenario":"witches","mode":"manual"}}"#).unwrap();
        for _ in 0..4 {
            writeln!(stdin, r#"{{"op":"observe","session":"s0001","hat":"N"}}"#).unwrap();
        }
        writeln!(stdin, r#"{{"op":"state","session":"s0001"}}"#).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    let text = stdout(&out);
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert_eq!(last["result"]["posterior"], cli);
}

#[test]
fn predictive_after_ten_violet_hats() {
    let text = stdout(&witches(&["predict", "--scenario", "witches", "--seq", "VVVVVVVVVV", "--outcome", "V"]));
    // 2049/3075 in lowest terms
    assert_eq!(text.trim(), "683/1025 ≈ 0.666341");
    assert_eq!(stdout(&witches(&["predict", "--outcome", "V"])).trim(), "1/2 ≈ 0.500000");
    assert_eq!(stdout(&witches(&["predict", "--seq", "NNNN", "--outcome", "Salty"])).trim(), "83/119 ≈ 0.697479");
}

#[test]
fn decide_compares_strategies() {
    let text = stdout(&witches(&["decide", "--scenario", "witches", "--compare", "deterministic,medallion"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("deterministic") && lines[1].contains("1/7 ≈"), "{text}");
    assert!(lines[2].starts_with("medallion") && lines[2].contains("12/49 ≈ 0.244898"), "{text}");
    assert_eq!(lines[3], "recommended: N -> Salty, V -> Sweet");
}

#[test]
fn simulate_is_reproducible_and_ends_with_summary() {
    let args = ["simulate", "--seed", "42", "--violet", "14", "--days", "2000", "--strategy", "medallion", "--report", "days"];
    let a = stdout(&witches(&args));
    let b = stdout(&witches(&args));
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 2001);
    let first: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["type"], "day");
    let summary: Value = serde_json::from_str(lines[2000]).unwrap();
    assert_eq!(summary["type"], "summary");
    assert_eq!(summary["violet_frequency"]["expected"], "2/3");
    assert_eq!(summary["anger_by_hat"]["V"]["expected"], "12/49");
}

#[test]
fn export_net_dot_and_json() {
    let dot = stdout(&witches(&["export-net", "--scenario", "witches", "--seq", "NNNN", "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains(r#""h:V7" [label="V7\n16/17""#), "{dot}");
    assert!(dot.contains("style=bold"));

    let json: Value = serde_json::from_str(&stdout(&witches(&["export-net", "--format", "json", "--evidence", "V"]))).unwrap();
    assert_eq!(json["format"], 1);
    let observed: Vec<&Value> = json["nodes"].as_array().unwrap().iter().filter(|n| n["observed"] == true).collect();
    assert_eq!(observed.len(), 1);
    assert_eq!(observed[0]["id"], "o:V");
}

#[test]
fn succession() {
    let text = stdout(&witches(&["succession", "--x", "10", "--n", "10"]));
    assert_eq!(text.lines().next(), Some("11/12 ≈ 0.916667"));
    assert_eq!(stdout(&witches(&["succession", "--x", "0", "--n", "0"])).trim(), "1/2 ≈ 0.500000");
}

#[test]
fn scenario_from_file() {
    let path = fixture("coin.json");
    let text = stdout(&witches(&["posterior", "--scenario", &path, "--seq", "HHH"]));
    assert!(text.contains("8/9"), "{text}");
}

#[test]
fn bad_flags_exit_two_with_json() {
    let out = witches(&["posterior", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["ok"], false);
    assert_eq!(err["error"]["kind"], "bad_flags");

    let out = witches(&["succession", "--x", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "invalid");

    let out = witches(&["predict", "--outcome", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "unknown_label");
}

#[test]
fn impossible_evidence_exits_three() {
    let out = witches(&["posterior", "--scenario", &fixture("coin.json"), "--seq", "HE"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"]["kind"], "impossible_evidence");
}

#[test]
fn help_is_not_an_error() {
    let out = witches(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("export-net"));
}
