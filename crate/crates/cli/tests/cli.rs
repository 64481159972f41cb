//! End-to-end runs of the `weylstir` binary.

use std::process::{Command, Output};

fn weylstir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylstir"))
        .args(args)
        .output()
        .expect("run weylstir")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn order_prints_the_text_form() {
    let o = weylstir(&["order", "N (N - lambda)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 ad^2 a^2 + (1 - lambda) ad^1 a^1\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn order_json_and_expand() {
    let o = weylstir(&["order", "a ad", "--format", "json"]);
    assert_eq!(
        stdout(&o),
        "[{\"c\":[{\"c\":\"1\",\"l\":0,\"x\":0}],\"i\":1,\"j\":1},{\"c\":[{\"c\":\"1\",\"l\":0,\"x\":0}],\"i\":0,\"j\":0}]\n"
    );
    let o = weylstir(&["expand", "ff(N, 3)"]);
    assert_eq!(
        stdout(&o),
        "ad^3 a^3: 1\nad^2 a^2: 3 - 3 lambda\nad^1 a^1: 1 - 3 lambda + 2 lambda^2\n"
    );
}

#[test]
fn table_formats() {
    let o = weylstir(&["table", "rS2", "--r", "1", "--nmax", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(
        rows[2],
        "1 * λ^0 * x^0 + -1 * λ^1 * x^0,3 * λ^0 * x^0 + -1 * λ^1 * x^0,1 * λ^0 * x^0"
    );

    let o = weylstir(&["table", "S2", "--nmax", "4", "--lambda", "0"]);
    assert_eq!(stdout(&o).lines().last(), Some("n=4: 0 | 1 | 7 | 6 | 1"));

    let o = weylstir(&[
        "table", "S1u", "--nmax", "2", "--lambda", "1/2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // [2,1]_λ = 1 - λ
    assert_eq!(v[2][1], serde_json::json!([{"c": "1/2", "l": 0, "x": 0}]));

    let o = weylstir(&[
        "table", "rS1", "--r", "2", "--nmax", "3", "--format", "latex",
    ]);
    let tex = stdout(&o);
    assert!(tex.starts_with("\\begin{tabular}{r|cccc}\n"));
    assert!(tex.ends_with("\\end{tabular}\n"));
}

#[test]
fn verify_json_reports() {
    let o = weylstir(&[
        "verify",
        "--ids",
        "REC20,T6b",
        "--nmax",
        "6",
        "--rmax",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["id"], "REC20");
    assert_eq!(reports[1]["id"], "T6b");
    for r in reports {
        assert_eq!(r["status"], "pass");
        assert!(r.get("counterexample").is_none());
        assert_eq!(r["ranges"]["nmax"], 6);
        assert_eq!(r["ranges"]["rmax"], 2);
    }
}

#[test]
fn printed_t8_is_reported_but_not_fatal() {
    let o = weylstir(&[
        "verify",
        "--ids",
        "T8_printed",
        "--kmax",
        "3",
        "--rmax",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["status"], "fail");
    assert_eq!(v[0]["asserted"], false);
    assert!(v[0]["counterexample"]["params"].is_object());
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        &["order", "a ^ lambda"][..],
        &["order", "ff(N, lambda)"],
        &["order", "(a + ad"],
        &["frobnicate"],
        &["table", "S3"],
        &["table", "S2", "--format", "xml"],
        &["verify", "--nmax", "-1"],
    ] {
        let o = weylstir(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify", "--nmax", "4", "--kmax", "4", "--rmax", "2", "--format", "json",
    ];
    let a = weylstir(&args);
    let b = weylstir(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
