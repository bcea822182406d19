use std::process::{Command, Output};

use lambda_gen::report::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambda-gen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_table() {
    let o = run(&["analyze", "10", "23"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("G = [10, 23, 34, 81, 105, 118]"), "{text}");
    assert!(text.contains("|G| = 6"));
    assert!(text.contains("c(Lambda_gen) = 109"));
    assert!(text.contains("tau_gen (staircase) = 157"));
    assert!(text.contains("ok = true"));
}

#[test]
fn analyze_rejects_non_coprime() {
    let o = run(&["analyze", "10", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p and m must be coprime"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn analyze_rejects_p_not_below_m() {
    assert_eq!(run(&["analyze", "23", "10"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "1", "10"]).status.code(), Some(2));
}

#[test]
fn analyze_json_round_trips() {
    let o = run(&["analyze", "122", "281", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.card, 10);
    assert_eq!(report.conductor_lambda, 17058);
    assert_eq!(report.to_json().trim_end(), text.trim_end());
}

#[test]
fn analyze_without_oracle() {
    let o = run(&[
        "analyze",
        "10",
        "23",
        "--no-oracle",
        "--tau-method",
        "abm",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.tau.abm, Some(157));
    assert_eq!(report.tau.oracle, None);
    assert!(report.ok);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "10", "23"]).status.code(), Some(0));
    // k_1 = 1: exercises the non-minimal filter.
    assert_eq!(run(&["verify", "10", "19"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "3", "8"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "9", "12"]).status.code(), Some(2));
}

#[test]
fn sweep_csv() {
    let o = run(&["sweep", "3", "40", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,m,s,N1,card,conductor_lambda,tau,ok"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(rows.contains(&"10,23,2,6,6,109,157,true"));
    assert!(stderr(&o).contains(&format!("pairs tested: {}, failures: 0", rows.len())));
}

#[test]
fn sweep_p_two() {
    let o = run(&["sweep", "2", "2", "50", "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for row in text.lines().skip(1) {
        let f: Vec<i64> = row.split(',').take(7).map(|x| x.parse().unwrap()).collect();
        let m = f[1];
        assert_eq!(f[4], 2, "{row}");
        assert_eq!(f[6], m - 1, "{row}");
    }
}

#[test]
fn sweep_json_and_flags() {
    let o = run(&[
        "sweep", "--min-p", "3", "--max-p", "5", "--max-m", "12", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["failures"], 0);
    assert_eq!(v["rows"][0]["p"], 3);
}

#[test]
fn sweep_rejects_bad_range() {
    let o = run(&["sweep", "5", "3", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("min_p"));
}
