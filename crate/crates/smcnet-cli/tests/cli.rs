//! End-to-end checks of the binary: outputs, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    p.to_str().unwrap().to_string()
}

fn smcnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smcnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_prints_the_arity() {
    let out = smcnet(&["check", &fixture("lambda.smc"), "app . (lam * id x)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "(x -o x) * x -> x\n");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(smcnet(&[]).status.code(), Some(64));
    assert_eq!(smcnet(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(smcnet(&["check", "only-one-arg"]).status.code(), Some(64));
    assert_eq!(
        smcnet(&["net", &fixture("lambda.smc"), "lam", "--bogus"])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn parse_and_type_errors_exit_65() {
    let lambda = fixture("lambda.smc");
    assert_eq!(
        smcnet(&["check", &lambda, "app . lam"]).status.code(),
        Some(65),
        "composition mismatch"
    );
    assert_eq!(
        smcnet(&["check", &lambda, "app . ("]).status.code(),
        Some(65),
        "syntax error"
    );
    assert_eq!(
        smcnet(&["check", "/nonexistent/theory.smc", "lam"])
            .status
            .code(),
        Some(65)
    );
    assert_eq!(
        smcnet(&["compose", &lambda, "lam", "lam"]).status.code(),
        Some(65),
        "uncomposable nets"
    );
}

#[test]
fn net_json_is_canonical_and_deterministic() {
    let example = fixture("example.smc");
    let out = smcnet(&["net", &example, "alpha"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"dom\":\"x\",\"cod\":\"x * y\",\"support\":[\"alpha\"],\"edges\":[[{\"region\":\"dom\",\"path\":\"\"},{\"region\":{\"sup\":0},\"path\":\"L\"}],[{\"region\":{\"sup\":0},\"path\":\"RL\"},{\"region\":\"cod\",\"path\":\"L\"}],[{\"region\":{\"sup\":0},\"path\":\"RR\"},{\"region\":\"cod\",\"path\":\"R\"}]]}\n"
    );
    let again = smcnet(&["net", &example, "alpha"]);
    assert_eq!(out.stdout, again.stdout, "byte-identical across runs");
    let json_flag = smcnet(&["net", &example, "alpha", "--json"]);
    assert_eq!(out.stdout, json_flag.stdout);
}

#[test]
fn net_dot_draws_clusters_and_dotted_unit_edges() {
    let out = smcnet(&["net", &fixture("monoid.smc"), "m . (e * id x)", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("subgraph cluster_dom"));
    assert!(text.contains("subgraph cluster_sup0"));
    assert!(text.contains("style=dotted"));
    assert!(text.contains("style=solid"));
}

#[test]
fn compose_glues_two_terms() {
    let out = smcnet(&["compose", &fixture("example.smc"), "alpha", "sym x y"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"support\":[\"alpha\"]"));
    assert!(text.contains("\"cod\":\"y * x\""));
}

#[test]
fn correct_accepts_and_rejects() {
    let miswired = fixture("miswired_eval.json");
    let out = smcnet(&["correct", &miswired]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "incorrect: switching 0 is cyclic\n");

    let explained = smcnet(&["correct", &miswired, "--explain"]);
    assert_eq!(explained.status.code(), Some(1));
    assert!(stdout(&explained).contains("graph switching_0 {"));

    // a good net round-tripped through the net subcommand
    let json = stdout(&smcnet(&["net", &fixture("example.smc"), "alpha"]));
    let tmp = std::env::temp_dir().join("smcnet_cli_test_alpha.json");
    std::fs::write(&tmp, json).unwrap();
    let ok = smcnet(&[
        "correct",
        tmp.to_str().unwrap(),
        "--theory",
        &fixture("example.smc"),
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "correct\n");
    std::fs::remove_file(&tmp).ok();
}

#[test]
fn correct_requires_a_theory_for_supported_nets() {
    let json = stdout(&smcnet(&["net", &fixture("example.smc"), "alpha"]));
    let tmp = std::env::temp_dir().join("smcnet_cli_test_alpha2.json");
    std::fs::write(&tmp, json).unwrap();
    let out = smcnet(&["correct", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    std::fs::remove_file(&tmp).ok();
}

#[test]
fn equal_reports_all_three_verdicts() {
    let lambda = fixture("lambda.smc");
    let redex = "app . (lam * id x)";

    let found = smcnet(&["equal", &lambda, redex, "eval x x", "--depth", "1"]);
    assert_eq!(found.status.code(), Some(0));
    assert_eq!(stdout(&found), "EQUAL\n  beta ->\n");

    let free = smcnet(&["equal", &lambda, redex, "eval x x"]);
    assert_eq!(free.status.code(), Some(1));
    assert_eq!(stdout(&free), "NOT-EQUAL-FREE\n");

    // an unreachable pair stays unknown at positive depth
    let swapped = "(lam * lam) . sym (x -o x) (x -o x)";
    let unknown = smcnet(&["equal", &lambda, "lam * lam", swapped, "--depth", "2"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert_eq!(stdout(&unknown), "UNKNOWN(2)\n");
}

#[test]
fn equal_output_is_deterministic() {
    let monoid = fixture("monoid.smc");
    let args = [
        "equal",
        &monoid,
        "m . (id x * e)",
        "runit x",
        "--depth",
        "1",
    ];
    let first = smcnet(&args);
    let second = smcnet(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), "EQUAL\n  unitr ->\n");
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn switchings_enumerates_and_counts() {
    let example = fixture("example.smc");
    let counted = smcnet(&["switchings", &example, "beta", "--count"]);
    assert_eq!(counted.status.code(), Some(0));
    assert_eq!(stdout(&counted), "4\n");

    let listed = smcnet(&["switchings", &example, "beta"]);
    assert_eq!(listed.status.code(), Some(0));
    let text = stdout(&listed);
    assert_eq!(text.lines().count(), 5);
    assert!(text.ends_with("4 switchings over 2 par nodes: correct\n"));
}
