use std::io::Write;
use std::process::{Command, Output};

use clap::Parser;
use serde_json::Value;

use cluster_capacity::cli::{run, Cli, EXIT_DEGENERATE, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE};

const PA6: &str = r#"{"q":2,"family":{"name":"PA","ell":6}}"#;
const LPA63: &str = r#"{"q":2,"family":{"name":"LPA","ell":6,"p":3}}"#;
const FIB: &str = r#"{"q":2,"forbidden":["11"]}"#;

fn clustercap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clustercap"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn capacity_of_pa6() {
    let out = clustercap(&[
        "capacity", "--spec", PA6, "--eps", "1e-6", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let reports: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for (r, method) in reports.iter().zip(["cluster", "spectral"]) {
        assert_eq!(r["method"], method);
        let value = r["capacity"].as_f64().unwrap();
        assert!((value - 0.7906315).abs() <= 1e-6, "{value}");
        assert!(r["eps"].as_f64().unwrap() <= 1e-6);
        let lo: f64 = r["x0"][0].as_str().unwrap().parse().unwrap();
        let hi: f64 = r["x0"][1].as_str().unwrap().parse().unwrap();
        assert!(lo <= hi && (-(lo.ln()) / 2f64.ln() - value).abs() <= 1e-6);
    }
}

#[test]
fn count_table_from_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(LPA63.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let out = clustercap(&["count", "--input", path, "--n", "16"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n\tN_F(n)");
    assert_eq!(lines.len(), 18);
    assert_eq!(*lines.last().unwrap(), "16\t42684");

    let out = clustercap(&[
        "count", "--input", path, "--n-from", "15", "--n-to", "16", "--format", "json",
    ]);
    let rows: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        rows,
        serde_json::json!([{"n": 15, "count": "22144"}, {"n": 16, "count": "42684"}])
    );
}

#[test]
fn verify_fibonacci() {
    let out = clustercap(&["verify", "--spec", FIB, "--format", "json"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let checks: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = checks.as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["status"] == "pass"), "{checks:?}");
}

#[test]
fn verify_random_is_seeded() {
    let a = clustercap(&["verify", "--random", "5", "--seed", "3", "--n", "10"]);
    let b = clustercap(&["verify", "--random", "5", "--seed", "3", "--n", "10"]);
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn genfun_json_round_trips_through_the_cli() {
    let out = clustercap(&["genfun", "--spec", LPA63, "--format", "json"]);
    let text = stdout(&out);
    assert_eq!(
        text.trim_end(),
        r#"{"T":["1","1","1","1","1","2"],"S":["1","-1","-1","-1","-1"],"q":2,"ellF":6}"#
    );
    let f = cluster_capacity::report::genfun_from_json(text.trim_end()).unwrap();
    assert_eq!(
        cluster_capacity::report::genfun_to_json(&f),
        text.trim_end()
    );

    let out = clustercap(&["genfun", "--spec", FIB]);
    let text = stdout(&out);
    assert!(text.contains("S(x) = 1 - x - x^2"), "{text}");
    assert!(
        text.contains("recurrence: N(n) - N(n-1) - N(n-2)"),
        "{text}"
    );
}

#[test]
fn exit_codes() {
    let degenerate = r#"{"q":2,"forbidden":["00","11","010","101"]}"#;
    let out = clustercap(&["capacity", "--spec", degenerate]);
    assert_eq!(out.status.code(), Some(EXIT_DEGENERATE));
    assert!(stdout(&out).contains("status: degenerate"));

    assert_eq!(
        clustercap(&["count", "--spec", "{", "--n", "3"])
            .status
            .code(),
        Some(EXIT_INPUT)
    );
    assert_eq!(
        clustercap(&[
            "count",
            "--spec",
            r#"{"q":2,"forbidden":["1"]}"#,
            "--n",
            "3"
        ])
        .status
        .code(),
        Some(EXIT_INPUT)
    );
    assert_eq!(
        clustercap(&["count", "--n", "3"]).status.code(),
        Some(EXIT_INPUT)
    );
    assert_eq!(
        clustercap(&["count", "--bogus"]).status.code(),
        Some(EXIT_INPUT)
    );
    assert_eq!(
        clustercap(&["capacity", "--spec", FIB, "--eps", "2"])
            .status
            .code(),
        Some(EXIT_INPUT)
    );
    let out = clustercap(&["bound-nonoverlap", "--q", "4", "--n", "9", "--search"]);
    assert_eq!(out.status.code(), Some(EXIT_RESOURCE));
}

#[test]
fn spectral_is_skipped_when_the_graph_is_too_big() {
    let out = clustercap(&[
        "capacity",
        "--spec",
        r#"{"q":2,"forbidden":["0000000000000001"]}"#,
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let reports: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 1);
    assert_eq!(reports[0]["method"], "cluster");
}

#[test]
fn bound_report() {
    let out = clustercap(&["bound-nonoverlap", "--q", "2", "--n", "4"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["bound"], "27/16");
    assert_eq!(report["floor"], "1");
    assert!(report.get("search").is_none());

    let out = clustercap(&["bound-nonoverlap", "--q", "4", "--n", "2", "--search"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["bound"], "4");
    assert_eq!(report["search"]["size"], 4);
    assert_eq!(report["search"]["within_bound"], true);
}

#[test]
fn run_in_process() {
    let cli = Cli::try_parse_from([
        "clustercap",
        "count",
        "--spec",
        PA6,
        "--n-from",
        "9",
        "--n-to",
        "16",
    ])
    .unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(cli, &mut out, &mut err), EXIT_OK);
    let text = String::from_utf8(out).unwrap();
    let counts: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(
        counts,
        ["294", "508", "878", "1518", "2626", "4544", "7862", "13600"]
    );
    assert!(err.is_empty());

    let cli = Cli::try_parse_from(["clustercap", "families", "--format", "json"]).unwrap();
    let mut out = Vec::new();
    assert_eq!(run(cli, &mut out, &mut Vec::new()), EXIT_OK);
    let families: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(families.as_array().unwrap().len(), 4);
}
