use std::path::Path;
use std::process::{Command, Output};

fn arrowdiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrowdiag"))
        .args(args)
        .env_remove("ARROWDIAG_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn table_rows(path: &Path) -> Vec<(String, String, String)> {
    let mut r = csv::Reader::from_path(path).unwrap();
    assert_eq!(r.headers().unwrap(), vec!["word", "family", "binomial_coeffs"]);
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            (rec[0].to_string(), rec[1].to_string(), rec[2].to_string())
        })
        .collect()
}

#[test]
fn eval_single_arrow_polynomial() {
    let o = arrowdiag(&["eval", "--family", "gl", "--diagram", "t1 h1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["binomial"], serde_json::json!(["0", "1/2", "1"]));
    assert_eq!(v["monomial"], serde_json::json!(["0", "0", "1/2"]));
    assert!(v["latex"].is_string());
}

#[test]
fn eval_oracle_value() {
    let o = arrowdiag(&["eval", "--family", "gl", "--diagram", "t1 h1", "--oracle", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#""9/2""#);
}

#[test]
fn eval_bare_circle_odd_orthogonal() {
    let o = arrowdiag(&["eval", "--family", "so-odd", "--diagram", ""]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["monomial"], serde_json::json!(["1", "2"]));
}

#[test]
fn eval_rejects_bad_input() {
    for args in [
        vec!["eval", "--family", "gl", "--diagram", "t1 h2"],
        vec!["eval", "--family", "gl", "--diagram", "t1  h1"],
        vec!["eval", "--family", "e8", "--diagram", "t1 h1"],
        vec!["eval", "--family", "gl", "--diagram", "t1 t2 t3 t4 t5 h1 h2 h3 h4 h5"],
        vec!["eval", "--family", "gl", "--diagram", "t1 h1", "--max-arrows", "7"],
    ] {
        let o = arrowdiag(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn eval_cap_can_be_raised() {
    let word = "t1 t2 t3 t4 t5 h5 h4 h3 h2 h1";
    let o = arrowdiag(&["eval", "--family", "gl", "--diagram", word, "--max-arrows", "5", "--oracle", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn cache_is_advisory() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let c = cache.to_str().unwrap();
    let args = ["eval", "--family", "sp", "--diagram", "t2 h2 t1 t3 h1 h3", "--cache", c];
    let plain = arrowdiag(&args[..5]);
    let first = arrowdiag(&args);
    let second = arrowdiag(&args);
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);

    let stored: serde_json::Value = serde_json::from_slice(&std::fs::read(&cache).unwrap()).unwrap();
    let keys: Vec<&String> = stored.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 1);
    assert!(keys[0].ends_with("|sp"));
    assert!(keys[0].starts_with("t1 "));

    std::fs::write(&cache, "{ broken").unwrap();
    let third = arrowdiag(&args);
    assert_eq!(third.stdout, plain.stdout);
    // no temp files left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn threads_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let o1 = arrowdiag(&["table", "--max-arrows", "3", "--families", "sp,gl", "--out", a.to_str().unwrap(), "--threads", "1"]);
    let o2 = Command::new(env!("CARGO_BIN_EXE_arrowdiag"))
        .args(["table", "--max-arrows", "3", "--families", "sp,gl", "--out", b.to_str().unwrap()])
        .env("ARROWDIAG_THREADS", "3")
        .output()
        .unwrap();
    assert!(o1.status.success() && o2.status.success());
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());

    let e1 = arrowdiag(&["eval", "--family", "so-odd", "--diagram", "t1 t2 t3 h1 h2 h3", "--threads", "1"]);
    let e2 = arrowdiag(&["eval", "--family", "so-odd", "--diagram", "t1 t2 t3 h1 h2 h3", "--threads", "4"]);
    assert_eq!(e1.stdout, e2.stdout);
}

#[test]
fn check_oracle_match_passes() {
    let o = arrowdiag(&["check", "--suite", "oracle-match", "--max-arrows", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 24);
    for r in recs {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["N"], "poly");
        assert_eq!(r["residual"], "0");
        assert!(r["check"].is_string() && r["family"].is_string());
    }
}

#[test]
fn check_six_term_passes() {
    let o = arrowdiag(&["check", "--suite", "6t"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failing: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] != "pass")
        .map(|r| format!("{} {} {}", r["check"], r["family"], r["residual"]))
        .take(3)
        .collect();
    assert_eq!(o.status.code(), Some(0), "failing records, first few: {failing:?}");
}

#[test]
fn check_failure_sets_exit_status() {
    // numeric sizes 2..2 keep this quick; the report is still complete JSON
    let o = arrowdiag(&["check", "--suite", "bialgebra", "--n-range", "2..2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let all_pass = v.as_array().unwrap().iter().all(|r| r["status"] == "pass");
    assert_eq!(o.status.success(), all_pass);
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn check_unknown_suite() {
    assert_eq!(arrowdiag(&["check", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(arrowdiag(&["check", "--suite", "4t", "--n-range", "3..1"]).status.code(), Some(2));
}

#[test]
fn table_single_arrow() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = arrowdiag(&["table", "--max-arrows", "1", "--families", "gl", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(table_rows(&out), vec![("t1 h1".into(), "gl".into(), "0 1/2 1".into())]);
}

#[test]
fn table_two_arrows_gl() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = arrowdiag(&["table", "--max-arrows", "2", "--families", "gl", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = table_rows(&out);
    assert_eq!(rows.len(), 4);
    let mut sorted = rows.clone();
    sorted.sort();
    assert_eq!(rows, sorted);
    assert!(rows.iter().any(|r| r.2 == "0 1/4 1 1"));
    assert!(rows.iter().any(|r| r.2 == "0 1/4 2 2"));
}

#[test]
fn table_two_arrows_so_even() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = arrowdiag(&["table", "--max-arrows", "2", "--families", "so-even", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = table_rows(&out);
    let values: Vec<&str> = rows.iter().map(|r| r.2.as_str()).collect();
    // N/4 + C(N,2); trailing zero coefficients are trimmed
    assert!(values.contains(&"0 1/4 1"), "so-even two-arrow values: {values:?}");
}

#[test]
fn table_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("t.csv");
    let o = arrowdiag(&["table", "--max-arrows", "1", "--families", "gl", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_rows_round_trip_through_parser() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    arrowdiag(&["table", "--max-arrows", "3", "--families", "so-odd", "--out", out.to_str().unwrap()]);
    let rows = table_rows(&out);
    assert_eq!(rows.len(), arrowdiag::diagrams::enumerate_oriented(3).unwrap().len());
    for (word, fam, coeffs) in rows {
        let d: arrowdiag::diagrams::OrientedChordDiagram = word.parse().unwrap();
        assert_eq!(d.to_string(), word);
        let p = arrowdiag::families::evaluate_weight(fam.parse().unwrap(), &d);
        let parsed: Vec<_> = coeffs.split(' ').map(|c| arrowdiag::polycount::parse_rational(c).unwrap()).collect();
        assert_eq!(arrowdiag::polycount::PolynomialQ::from_binomial(&parsed), p);
    }
}
