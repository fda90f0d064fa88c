//! End-to-end tests of the command-line interface: source resolution,
//! document round-trips, report determinism, and exit-code conventions
//! (0 = all checks pass, 1 = a check failed, 2 = usage/build error).

use std::path::PathBuf;

use antipode::cli::run;

fn cli(args: &[&str]) -> (i32, String) {
    let mut full = vec!["antipode"];
    full.extend_from_slice(args);
    run(full)
}

fn temp_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("antipode-cli-test-{}", name));
    std::fs::write(&path, content).unwrap();
    path
}

fn bundled_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../presentations")
}

#[test]
fn bundled_documents_verify_and_match_their_expected_invariants() {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(bundled_dir())
        .expect("bundled presentations directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    assert!(paths.len() >= 5, "expected the five stock documents");
    for path in paths {
        let file = path.to_str().unwrap();
        let (code, out) = cli(&["verify", "--file", file]);
        assert_eq!(code, 0, "verify {}: {}", file, out);
        let (code, out) = cli(&["order", "--file", file]);
        assert_eq!(code, 0, "order {}: {}", file, out);
        assert!(out.contains("matches expected"), "{}: {}", file, out);
        let (code, out) = cli(&["mh", "--file", file]);
        assert_eq!(code, 0, "mh {}: {}", file, out);
    }
}

#[test]
fn export_round_trips_through_a_file() {
    let (code, exported) = cli(&["export", "--family", "uq-borel", "--n", "3"]);
    assert_eq!(code, 0);
    let path = temp_file("roundtrip.json", &exported);
    let file = path.to_str().unwrap();

    let (code, out) = cli(&["order", "--file", file]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("|S| = 6"), "{}", out);

    // Exporting the imported document reproduces it byte for byte.
    let (code, re_exported) = cli(&["export", "--file", file]);
    assert_eq!(code, 0);
    assert_eq!(exported, re_exported);
    std::fs::remove_file(path).ok();
}

#[test]
fn misoriented_relation_in_a_document_is_rejected() {
    let (_, exported) = cli(&["export", "--family", "uq-borel", "--n", "3"]);
    let broken = exported.replace("\"K*E = q*E*K\"", "\"E*K = (-q^2 - q)*K*E\"");
    assert_ne!(broken, exported, "patch must apply");
    let path = temp_file("misoriented.json", &broken);
    let (code, out) = cli(&["order", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{}", out);
    assert!(
        out.contains("cannot be oriented") && out.contains("monomial order"),
        "error should explain the orientation problem: {}",
        out
    );
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_json_reports_line_and_column() {
    let path = temp_file("malformed.json", "{\n  \"name\": \"x\",,\n}");
    let (code, out) = cli(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("line 2"), "{}", out);
    std::fs::remove_file(path).ok();
}

#[test]
fn contradicted_expected_values_fail_with_a_named_mismatch() {
    let (_, exported) = cli(&["export", "--family", "uq-borel", "--n", "3"]);
    // Expected |S| is 6; claim 8 instead.
    let broken = exported.replace("\"value\": 6", "\"value\": 8");
    assert_ne!(broken, exported);
    let path = temp_file("wrong-expected.json", &broken);
    let (code, out) = cli(&["order", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{}", out);
    assert!(out.contains("MISMATCH"), "{}", out);
    assert!(out.contains("expected |S| = 8"), "{}", out);
    assert!(
        out.contains("|S| = 6") || out.contains("computed 6"),
        "{}",
        out
    );
    std::fs::remove_file(path).ok();
}

#[test]
fn broken_antipode_fails_verification_with_a_witness() {
    let (_, exported) = cli(&["export", "--family", "uq-borel", "--n", "3"]);
    let broken = exported.replace("\"E\": \"-K^-1*E\"", "\"E\": \"K^-1*E\"");
    assert_ne!(broken, exported);
    let path = temp_file("broken-antipode.json", &broken);
    let (code, out) = cli(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{}", out);
    assert!(out.contains("[FAIL]"), "{}", out);
    assert!(out.contains("witness"), "{}", out);
    std::fs::remove_file(path).ok();
}

#[test]
fn json_reports_are_byte_identical_across_runs_and_structured() {
    let args = ["order", "--family", "uq-borel", "--n", "3", "--json"];
    let (code1, out1) = cli(&args);
    let (code2, out2) = cli(&args);
    assert_eq!((code1, code2), (0, 0));
    assert_eq!(out1, out2);
    let v: serde_json::Value = serde_json::from_str(&out1).unwrap();
    assert_eq!(v["result"]["kind"], "finite");
    assert_eq!(v["result"]["value"], 6);
    assert_eq!(v["passed"], true);

    let args = ["sweep", "--family", "taft-wilson", "--p", "3,5", "--json"];
    let (c1, s1) = cli(&args);
    let (c2, s2) = cli(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(s1, s2);
    let v: serde_json::Value = serde_json::from_str(&s1).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["rows"][0]["matches"], true);
    assert_eq!(v["rows"][0]["char_p_bound"], 6);
}

#[test]
fn generic_parameter_order_reports_the_certificate() {
    let (code, out) = cli(&["order", "--family", "uq-borel-generic", "--json"]);
    assert_eq!(code, 0, "{}", out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["kind"], "infinite_certified");
    assert_eq!(v["result"]["certificate"]["kind"], "geometric_drift");
    assert_eq!(v["result"]["certificate"]["element"], "E");
    assert_eq!(v["result"]["certificate"]["ratio"], "1 / q");
}

#[test]
fn sweep_tables_flag_every_row() {
    let (code, out) = cli(&["sweep", "--family", "taft-wilson", "--p", "3,5,7"]);
    assert_eq!(code, 0, "{}", out);
    assert_eq!(out.matches(" ok").count(), 3, "{}", out);
    assert!(out.contains("result: PASS"), "{}", out);

    let (code, out) = cli(&["sweep", "--family", "cyclic", "--n", "1..4"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("result: PASS"), "{}", out);
}

#[test]
fn filtration_and_char_p_commands_pass_on_the_restricted_example() {
    let (code, out) = cli(&[
        "tw-check",
        "--family",
        "taft-wilson",
        "--p",
        "3",
        "--level",
        "2",
    ]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("result: PASS"), "{}", out);

    let (code, out) = cli(&["charp-check", "--family", "taft-wilson", "--p", "3"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("attained exactly"), "{}", out);
}

#[test]
fn skewprim_lists_the_computed_basis() {
    let (code, out) = cli(&[
        "skewprim", "--family", "uq-borel", "--n", "3", "--x", "K^-1", "--bound", "2",
    ]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("dimension: 2"), "{}", out);
    assert!(out.contains("E*K^-1"), "{}", out);
    assert!(out.contains("contains x - y: yes"), "{}", out);
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    let (code, _) = cli(&["skewprim", "--family", "uq-borel", "--n", "3"]);
    assert_eq!(code, 2, "missing required --x");
    let (code, _) = cli(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, out) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("sweep"), "{}", out);
}
