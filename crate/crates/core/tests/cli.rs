//! Subprocess tests for the CLI: golden outputs for the documented
//! invocations, exit codes, and JSON round-trips.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_unicusp"))
        .args(args)
        .output()
        .expect("failed to run unicusp");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).to_string(),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

fn json(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout.trim()).expect("stdout is one JSON document")
}

#[test]
fn euclid_golden_output() {
    let (code, out, _) = run(&["cusp", "euclid", "--a", "2", "--b", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"sequence":[2,1,1],"sum":4,"sum_sq":6}"#
    );
}

#[test]
fn dicriticals_golden_values() {
    let (code, out, _) = run(&[
        "pencil",
        "dicriticals",
        "--profile",
        r#"{"degree":3,"multiplicities":[2]}"#,
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["count"], 1);
    assert_eq!(v["degrees"], serde_json::json!([1]));
    assert_eq!(v["degree_one"], true);
}

#[test]
fn erasability_of_the_four_chain_is_unknown() {
    let (code, out, _) = run(&[
        "pair",
        "erasability",
        "--chain",
        "[-3,-1*,-1,-2]",
        "--depth",
        "6",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "unknown");
    assert_eq!(v["witnesses"], 0);
}

#[test]
fn graph_roundtrip_through_the_cli() {
    let (code, out, _) = run(&[
        "graph",
        "blowup",
        "--graph",
        r#"{"chain":[-2,-3]}"#,
        "--at-edge",
        "v1,v2",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    // result re-parses as a graph document
    let (code2, out2, _) = run(&["graph", "invariants", "--graph", &v.to_string()]);
    assert_eq!(code2, 0, "result doc must re-parse: {}", out2);
}

#[test]
fn equiv_empty_witness_serializes() {
    let (code, out, _) = run(&["graph", "equiv-empty", "--graph", r#"{"chain":[-2,-1]}"#]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "equivalent");
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn invariants_report_exact_determinant() {
    let (code, out, _) = run(&["graph", "invariants", "--graph", r#"{"chain":[-2,0,-2]}"#]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["det"], "4");
    assert_eq!(v["i"], "-4");
    assert_eq!(v["neg_definite"], false);
}

#[test]
fn exit_code_two_on_invalid_input() {
    let (code, _, err) = run(&["cusp", "euclid", "--a", "0", "--b", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("positive"));

    let (code, _, _) = run(&["graph", "invariants", "--graph", "{bad json"]);
    assert_eq!(code, 2);

    let (code, _, err) = run(&[
        "pencil",
        "resolve",
        "--profile",
        r#"{"degree":4,"multiplicities":[2]}"#,
    ]);
    assert_eq!(code, 2, "genus-failing profile is invalid input");
    assert!(err.contains("genus"));
}

#[test]
fn resolve_report_schema() {
    let (code, out, _) = run(&[
        "pencil",
        "resolve",
        "--profile",
        r#"{"degree":5,"multiplicities":[2,2,2,2,2,2]}"#,
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["m"], 7);
    assert_eq!(v["full_seq"], serde_json::json!([2, 2, 2, 2, 2, 2, 1]));
    assert_eq!(v["weights"], serde_json::json!([-2, -2, -2, -2, -2, -2, -1]));
    assert_eq!(v["dicriticals"]["indices"], serde_json::json!([6, 7]));
    assert_eq!(v["dicriticals"]["degrees"], serde_json::json!([1, 1]));
    let checks = &v["checks"];
    assert_eq!(checks["degree_one"], true);
    assert_eq!(checks["count"], 2);
    assert_eq!(checks["section"], true);
    assert_eq!(checks["tree"], true);
    assert_eq!(checks["contracts"], true);
}

#[test]
fn profile_files_are_read_from_disk() {
    let path = std::env::temp_dir().join("unicusp_profile_test.json");
    std::fs::write(&path, r#"{"degree":3,"multiplicities":[2]}"#).unwrap();
    let (code, out, _) = run(&["cusp", "nu", "--profile", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["nu_tilde"], 5);
    assert_eq!(v["nu_emb"], 3);
}

#[test]
fn linsys_dim_matches_the_window() {
    let curve = r#"{"degree":3,"F":[{"exp":[0,2,1],"coef":"1"},{"exp":[3,0,0],"coef":"-1"}],"param":{"x":{"2":"1"},"y":{"3":"1"}},"truncation":20}"#;
    let (code, out, _) = run(&[
        "linsys", "dim", "--curve", curve, "--form-degree", "3", "--contact", "9",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["dim"], 1);

    let (code, out, _) = run(&["linsys", "semigroup", "--curve", curve]);
    assert_eq!(code, 0);
    assert_eq!(
        json(&out)["members"],
        serde_json::json!([0, 2, 3, 4, 5, 6, 7, 8, 9])
    );
}

#[test]
fn catalog_commands() {
    let (code, out, _) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 8);

    let (code, out, _) = run(&["catalog", "show", "--name", "cusp-4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["nu_tilde"], 7);
    assert_eq!(v["semigroup"]["members"].as_array().unwrap().len(), 14);

    let (code, _, _) = run(&["catalog", "show", "--name", "missing"]);
    assert_eq!(code, 2);
}

#[test]
fn text_format_renders_lines() {
    let (code, out, _) = run(&[
        "cusp",
        "nu",
        "--profile",
        r#"{"degree":3,"multiplicities":[2]}"#,
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("nu_tilde: 5"));
}

#[test]
fn obstruction_reports_candidates() {
    let (code, out, _) = run(&["cusp", "obstruction", "--d", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["candidates"].as_array().unwrap().len(), 1);
    assert_eq!(v["candidates"][0]["seq"], serde_json::json!([2, 1, 1, 1, 1, 1]));

    let (code, _, err) = run(&["cusp", "obstruction", "--d", "20"]);
    assert_eq!(code, 2);
    assert!(err.contains("bound"));
}
