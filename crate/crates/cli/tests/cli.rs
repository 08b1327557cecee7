use simpcert_cli::{exact_float, run, EXIT_NOT_CERTIFIED, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("simpcert").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "eval",
        "--f",
        "exp(x)",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "all",
        "--h",
        "t",
        "--s",
        "0.5",
        "--q",
        "2",
        "--alpha",
        "1",
        "--m",
        "1",
        "--format",
        "json",
    ];
    let (c1, first, _) = invoke(&args);
    let (c2, second, _) = invoke(&args);
    assert_eq!(c1, EXIT_OK);
    assert_eq!(c2, EXIT_OK);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
}

#[test]
fn all_skips_theorems_without_parameters() {
    let (code, out, _) = invoke(&[
        "eval",
        "--f",
        "x^4",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "all",
        "--format",
        "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][0], "Classical");
}

#[test]
fn csv_uses_lf_and_full_precision() {
    let (code, out, _) = invoke(&[
        "eval",
        "--f",
        "x^4",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "T2_1",
        "--h",
        "t",
        "--format",
        "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains('\r'));
    assert!(out.ends_with('\n'));
    let rows = csv_rows(&out);
    assert_eq!(rows[0][..3], ["theorem", "bound", "actual_error"]);
    let bound: f64 = rows[1][1].parse().unwrap();
    assert_eq!(rows[1][1], exact_float(bound));
    assert!((bound - 1.0 / 48.0).abs() < 1e-15);
}

#[test]
fn infinite_bound_is_reported_as_inf() {
    let (code, out, _) = invoke(&[
        "eval",
        "--f",
        "x^4",
        "--a",
        "0.5",
        "--b",
        "1",
        "--theorem",
        "T2_2",
        "--h",
        "1/t",
        "--q",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["bound"], "inf");
    assert_eq!(v[0]["ratio"], serde_json::Value::Null);
    assert_eq!(v[0]["status"], "bound not informative");
}

#[test]
fn failed_hypothesis_reports_counterexample() {
    let (code, out, err) = invoke(&[
        "eval",
        "--f",
        "-x^5",
        "--a",
        "0.5",
        "--b",
        "1.5",
        "--theorem",
        "T2_1",
        "--h",
        "t^2",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_NOT_CERTIFIED);
    assert!(err.contains("warning"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["hypothesis"]["passed"], false);
    assert!(
        v[0]["hypothesis"]["counterexample"]["slack"]
            .as_f64()
            .unwrap()
            < 0.0
    );
    assert_eq!(v[0]["dominates"], serde_json::Value::Null);
}

#[test]
fn validation_errors_are_reported_together() {
    let (code, out, err) = invoke(&[
        "eval",
        "--f",
        "x^4",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "T2_2",
        "--theorem",
        "T3_1",
        "--alpha",
        "3",
        "--m",
        "0.5",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    for needle in [
        "T2_2 needs --h",
        "T2_2 needs --q",
        "T3_1 needs --q",
        "alpha = 3",
    ] {
        assert!(err.contains(needle), "missing `{needle}` in:\n{err}");
    }
}

#[test]
fn parse_errors_point_at_the_offset() {
    let (code, _, err) = invoke(&[
        "eval",
        "--f",
        "x^4 + y",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "Classical",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("byte 6"), "{err}");
    assert!(err.contains("        ^"), "{err}");
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("eval") && out.contains("sweep"));
    let (code, _, _) = invoke(&["eval"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = invoke(&[
        "eval",
        "--f",
        "x^4",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "Classical",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["theorem"], "Classical");
}

#[test]
fn sweep_over_s_shows_the_reduction() {
    let (code, out, _) = invoke(&[
        "sweep",
        "--f",
        "x^4",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "T2_1",
        "--theorem",
        "A",
        "--h",
        "power",
        "--axis",
        "s",
        "--from",
        "0.1",
        "--to",
        "1",
        "--step",
        "0.1",
    ]);
    assert_eq!(code, EXIT_OK);
    let rows = csv_rows(&out);
    assert_eq!(
        rows[0],
        [
            "s",
            "bound_T2_1",
            "hypothesis_T2_1",
            "bound_A",
            "hypothesis_A",
            "actual_error",
            "tightest"
        ]
    );
    assert_eq!(rows.len(), 11);
    for row in &rows[1..] {
        let h: f64 = row[1].parse().unwrap();
        let s: f64 = row[3].parse().unwrap();
        assert!(((h - s) / s).abs() <= 1e-10, "{row:?}");
    }
}

#[test]
fn sweep_over_q_collapses_at_one() {
    let (code, out, _) = invoke(&[
        "sweep",
        "--f",
        "x^4",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "T2_3",
        "--theorem",
        "T2_1",
        "--h",
        "t",
        "--axis",
        "q",
        "--values",
        "1,2,4,8",
    ]);
    assert_eq!(code, EXIT_OK);
    let rows = csv_rows(&out);
    let pm: f64 = rows[1][1].parse().unwrap();
    let l1: f64 = rows[1][3].parse().unwrap();
    assert!(((pm - l1) / l1).abs() <= 1e-14);
}

#[test]
fn sweep_over_alpha_has_constant_moment_sums() {
    let (_, out, _) = invoke(&[
        "sweep",
        "--f",
        "exp(x)",
        "--a",
        "0.2",
        "--b",
        "1",
        "--theorem",
        "T3_2",
        "--q",
        "2",
        "--m",
        "1",
        "--axis",
        "alpha",
        "--from",
        "0",
        "--to",
        "1",
        "--step",
        "0.1",
    ]);
    let rows = csv_rows(&out);
    assert_eq!(rows[0].last().unwrap(), "right_moment_sum");
    assert_eq!(rows.len(), 12);
    for row in &rows[1..] {
        for cell in &row[row.len() - 2..] {
            let v: f64 = cell.parse().unwrap();
            assert!((v - 1.0 / 192.0).abs() <= 1e-14);
        }
    }
}

#[test]
fn sweep_rejects_empty_ranges() {
    let (code, _, err) = invoke(&[
        "sweep",
        "--f",
        "x^4",
        "--a",
        "0",
        "--b",
        "1",
        "--theorem",
        "A",
        "--axis",
        "s",
        "--from",
        "1",
        "--to",
        "0.5",
        "--step",
        "0.1",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("empty range"));
}
