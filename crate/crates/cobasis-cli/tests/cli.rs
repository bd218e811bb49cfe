//! End-to-end tests of the command-line interface.

use std::process::{Command, Output};

fn cobasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobasis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn matrix_zernike_descending_to_monomial() {
    let out = cobasis(&[
        "matrix", "--from", "zernike:desc", "--to", "monomial", "--n", "9", "--m", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["1", "-4", "10", "-20"]);
    assert_eq!(lines[3].split_whitespace().collect::<Vec<_>>(), ["0", "0", "0", "84"]);
}

#[test]
fn matrix_identity() {
    let out = cobasis(&["matrix", "--from", "x", "--to", "x", "--n", "4", "--m", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().next().unwrap().starts_with('1'));
}

#[test]
fn matrix_csv_round_trip() {
    let out = cobasis(&[
        "matrix", "--from", "bernstein:asc", "--to", "monomial", "--n", "7", "--m", "3",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "35,0,0,0,0");
    // parse the CSV back and compare entry strings
    let grid: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(grid[1], vec!["-140", "35", "0", "0", "0"]);
    assert_eq!(grid.len(), 5);
}

#[test]
fn matrix_json_document() {
    let out = cobasis(&[
        "matrix", "--from", "laguerre(10):asc", "--to", "monomial", "--n", "6", "--m", "3",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["dim"], 4);
    assert_eq!(doc["entries"][0][0], "-20");
    assert_eq!(doc["entries"][3][3], "7/24");
}

#[test]
fn matrix_superposed_target() {
    let out = cobasis(&[
        "matrix", "--from", "bernstein:asc", "--to", "zernike:asc:sup", "--n", "7", "--m", "3",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "7/2,0,0,0,0");
    assert_eq!(text.lines().last().unwrap(), "560,-280,84,-14,1");
}

#[test]
fn convert_bernstein_ascending() {
    let out = cobasis(&[
        "convert", "--poly", "16x^7-12x^5+5x^4+3x^2", "--to", "bernstein:asc", "--n", "7",
        "--m", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("b_2^7: 1/7"));
    assert!(text.contains("b_5^7: 11/7"));
    assert!(text.contains("b_7^7: 12"));
}

#[test]
fn convert_x6_descending_bernstein() {
    let out = cobasis(&[
        "convert", "--poly", "x^6", "--to", "bernstein:desc", "--n", "6", "--m", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("b_3^6: -1/20"));
    assert!(text.contains("b_3^5: 3/10"));
    assert!(text.contains("b_3^4: -3/4"));
    assert!(text.contains("b_3^3: 1"));
}

#[test]
fn convert_parity_split() {
    let out = cobasis(&[
        "convert", "--poly", "16x^7-12x^5+5x^4+3x^2", "--to", "zernike:asc", "--n", "7",
        "--m", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# even part"));
    assert!(text.contains("# odd part"));
    assert!(text.contains("R_7^5: 2"));
    assert!(text.contains("R_4^4: 9"));
}

#[test]
fn convert_zero_polynomial_rejected() {
    let out = cobasis(&["convert", "--poly", "0", "--to", "bernstein:asc", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("zero polynomial"), "{err}");
}

#[test]
fn convert_out_of_span_names_the_degree() {
    let out = cobasis(&["convert", "--poly", "x^9", "--to", "bernstein:asc", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains('9'), "{err}");
}

#[test]
fn bad_descriptor_is_usage_error() {
    let out = cobasis(&["matrix", "--from", "nosuch", "--to", "x", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cobasis(&["matrix", "--from", "bernstein:sideways", "--to", "x", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_args_exit_two() {
    let out = cobasis(&["matrix", "--from", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncation_window_must_match() {
    let out = cobasis(&[
        "matrix", "--from", "chebyshevt@9,1", "--to", "monomial", "--n", "9", "--m", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_groupoid_passes() {
    let out = cobasis(&["verify", "groupoid", "--n", "7", "--m", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS identity"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_small_oracle_sweep() {
    let out = cobasis(&["verify", "oracle", "--max-n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("match the oracle"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_unknown_suite() {
    let out = cobasis(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_names_families() {
    let out = cobasis(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("zernike"));
    assert!(text.contains("bernstein"));
    assert!(text.contains("descriptor grammar"));
}
