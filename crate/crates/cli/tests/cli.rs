//! Surface-level behavior of the binary: config merging, output formats,
//! and exit codes.

use std::io::Write;
use std::process::Command;

fn howe(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_howe"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn hwv_json_has_terms_and_coefficients() {
    let out = howe(&["hwv", "--n", "2", "--a1", "1/2", "--a2", "1/3", "--b", "0", "--c", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["b"], 0);
    assert_eq!(v["c"], 1);
    assert_eq!(v["dimension"], 2);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["k"], serde_json::json!([0]));
    assert_eq!(terms[0]["coeff"], "1");
}

#[test]
fn flags_override_config_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# comment line\nn=2\na1=3/2\na2=1/2\nb_min=-2\nb_max=2").unwrap();
    let path = f.path().to_str().unwrap();
    let out = howe(&["branch", "--config", path, "--b-min", "0", "--b-max", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["a1"], "3/2");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["b"], 0);
}

#[test]
fn markdown_table_renders_rows() {
    let out = howe(&[
        "table", "--n", "2", "--a1", "3/2", "--a2", "1/2", "--b-min", "-1", "--b-max", "0",
        "--c-max", "1", "--depth", "2", "--format", "md",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| b | regime |"));
    assert!(text.contains("crit_neg"));
    assert!(text.contains("crit_pos"));
    assert!(text.contains("Overall: pass"));
}

#[test]
fn invalid_inputs_exit_with_code_2() {
    for args in [
        &["verify", "--n", "1", "--a1", "1/2", "--a2", "1/3"][..],
        &["verify", "--n", "2", "--a1", "abc", "--a2", "1/3"],
        &["verify", "--n", "2", "--a1", "1/2", "--a2", "1/3", "--b-min", "2", "--b-max", "-2"],
        &["table", "--n", "2", "--a1", "1/2", "--a2", "1/3", "--variant", "bogus"],
    ] {
        let out = howe(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn series_reports_the_string() {
    let out = howe(&[
        "series", "--n", "2", "--a1", "3/2", "--a2", "1/2", "--b", "-1", "--depth", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entry"]["regime"], "crit_neg");
    let string = v["string"].as_array().unwrap();
    assert_eq!(string.len(), 4);
    assert_eq!(string[0]["y_coeff"], "0");
}
