mod common;

use std::process::{Command, Output};

fn excisive(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excisive"))
        .args(args)
        .env_remove("EXCISIVE_ENUM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = excisive(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["mu", "2", "2", "3"]), "4\n");
    assert_eq!(stdout(&["delta", "2", "3", "1"]), "2\n");
    assert_eq!(
        stdout(&["smith", "4", "2", "4", "2", "3", "2"]),
        "HOLDS: P(4|2,4) ⊆ P(2|2,3)\n"
    );
    assert_eq!(stdout(&["ideals", "1", "2", "3", "--count"]), "5\n");
    assert_eq!(
        stdout(&["ideals", "2", "3", "2", "--count", "--csv"]),
        "d,p,hmax,count\n2,3,2,16\n"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        excisive(&["mu", "5", "5", "3", "--method", "brute"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(excisive(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(excisive(&["delta", "4", "3", "1"]).status.code(), Some(2));
    assert_eq!(excisive(&["ring", "4", "--check"]).status.code(), Some(0));
    assert_eq!(excisive(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_comes_from_the_environment() {
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_excisive"))
            .args(["ideals", "3", "2", "2", "--count"])
            .env("EXCISIVE_ENUM_BUDGET", budget)
            .output()
            .unwrap()
    };
    assert_eq!(run("63").status.code(), Some(2));
    let ok = run("64");
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn dot_output_parses() {
    for args in [
        &["spec", "balmer", "-d", "4", "-p", "2", "-H", "4", "--dot"][..],
        &["spec", "zariski", "-d", "3", "-p", "2,3,5", "--dot"],
        &["spec", "hz", "-d", "3", "-p", "2,3", "--dot"],
        &["spec", "hz", "-d", "6", "-p", "2", "--slice", "3", "--dot"],
        &[
            "spec",
            "balmer",
            "-d",
            "2",
            "-p",
            "2,3",
            "--no-infinity",
            "--dot",
        ],
    ] {
        let text = stdout(args);
        let g = common::parse_dot(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(g.is_acyclic(), "{args:?}");
        assert_eq!(text, stdout(args));
    }
}

#[test]
fn balmer_dot_shape() {
    let g = common::parse_dot(&stdout(&[
        "spec", "balmer", "-d", "1", "-p", "2", "-H", "3", "--dot",
    ]))
    .unwrap();
    assert_eq!(g.attrs["rankdir"], "TB");
    let labels: Vec<&str> = g.labels().into_iter().collect();
    assert_eq!(labels, ["P(1|*,1)", "P(1|2,2)", "P(1|2,3)", "P(1|2,inf)"]);
    assert_eq!(g.edges.len(), 3);
}

#[test]
fn zariski_json_counts() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "spec", "zariski", "-d", "3", "-p", "2,3,5", "--json",
    ]))
    .unwrap();
    let points = json["points"].as_array().unwrap();
    let minimal = points.iter().filter(|p| p["char"] == 0).count();
    assert_eq!((minimal, points.len() - minimal), (3, 6));
    for pair in json["covers"].as_array().unwrap() {
        let a = pair[0].as_u64().unwrap() as usize;
        assert_eq!(points[a]["char"], 0);
    }
}

#[test]
fn ring_outputs() {
    let table = stdout(&["ring", "3", "--table"]);
    assert!(table.contains("x2*x2 = 2 x2 + 4 x3\n"));
    assert!(table.contains("x3*x3 = 6 x3\n"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["ring", "5", "--cokernel", "--json"])).unwrap();
    assert_eq!(json["matches_factorials"], true);
    assert_eq!(json["determinant"], "34560");
}

#[test]
fn ideals_listing() {
    let list = stdout(&["ideals", "2", "2", "1", "--list"]);
    assert_eq!(list.lines().count(), 7);
    assert!(list.lines().any(|l| l == "(inf, inf)"));
    assert!(!list.lines().any(|l| l == "(0, inf)"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["ideals", "2", "2", "1", "--list", "--json"])).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 7);
}
