//! Per-pair report: the closed-form results, optionally cross-checked against
//! Delorme's algorithm, with table and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::delorme::{self, OracleTrace};
use crate::error::{Error, Result};
use crate::euclid::EuclidData;
use crate::genrec::{self, GenStep};
use crate::semigroup::SemigroupPM;
use crate::tjurina;

/// Largest `pm` for which the set-based oracle is run by default.
pub const ORACLE_PM_LIMIT: i64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum TauMethod {
    Staircase,
    Abm,
    Oracle,
    #[default]
    All,
}

impl TauMethod {
    fn wants(self, other: TauMethod) -> bool {
        self == TauMethod::All || self == other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub p: i64,
    pub m: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TauValues {
    pub staircase: Option<i64>,
    pub abm: Option<i64>,
    pub oracle: Option<i64>,
}

impl TauValues {
    fn present(&self) -> Vec<(&'static str, i64)> {
        [
            ("staircase", self.staircase),
            ("abm", self.abm),
            ("oracle", self.oracle),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }

    /// First available value, in the order staircase, abm, oracle.
    pub fn any(&self) -> Option<i64> {
        self.staircase.or(self.abm).or(self.oracle)
    }
}

/// Cross-check outcomes; `None` means the check was not run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Checks {
    /// Accelerated Delorme run reproduces the naive one (g, u, c).
    pub accelerated: Option<bool>,
    /// Closed-form generators equal the naive oracle's.
    pub generators: Option<bool>,
    /// Closed-form conductor equals the oracle's.
    pub conductor: Option<bool>,
    /// Min-term rule for `γ_i` holds on every step where it applies.
    pub min_term: Option<bool>,
    /// All computed `τ_gen` values coincide.
    pub tau: Option<bool>,
}

impl Checks {
    pub fn all_ok(&self) -> bool {
        [
            self.accelerated,
            self.generators,
            self.conductor,
            self.min_term,
            self.tau,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
    }
}

/// One disagreement between two routes to the same quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diff {
    pub check: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: Input,
    pub euclid: EuclidData,
    pub steps: Vec<GenStep>,
    #[serde(rename = "G")]
    pub generators: Vec<i64>,
    pub card: usize,
    pub mu: i64,
    pub conductor_lambda: i64,
    pub tau: TauValues,
    pub ok: bool,
    pub checks: Checks,
    #[serde(skip)]
    pub diffs: Vec<Diff>,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub run_oracle: bool,
    pub tau_method: TauMethod,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            run_oracle: true,
            tau_method: TauMethod::All,
        }
    }
}

/// Indices `i` (1-based) where the min-term rule disagrees with the step's
/// `γ_i`. Steps whose `g_i − c_{i−1}` is not a gap are skipped, except that a
/// vanishing `γ_i` must come with `g_i ∈ Γ + c_{i−1}`.
pub fn min_term_violations(s: &SemigroupPM, steps: &[GenStep]) -> Vec<usize> {
    let mut c_prev = 0;
    let mut bad = Vec::new();
    for st in steps {
        let ok = match genrec::min_term_gamma(s, st.g, c_prev) {
            Some(gamma) => gamma == st.gamma,
            None => st.gamma != 0 || s.contains(st.g - c_prev),
        };
        if !ok {
            bad.push(st.i);
        }
        c_prev = st.c;
    }
    bad
}

impl Report {
    pub fn build(s: &SemigroupPM, opts: Options) -> Result<Report> {
        let summary = genrec::summarize(s)?;
        let oracle = opts.run_oracle.then(|| delorme::run_naive(s));

        let mut tau = TauValues::default();
        if opts.tau_method.wants(TauMethod::Staircase) {
            tau.staircase = Some(summary.tau_gen);
        }
        if opts.tau_method.wants(TauMethod::Abm) && s.p() > 2 {
            tau.abm = Some(tjurina::tau_abm(s, &summary.euclid)?);
        }
        if opts.tau_method.wants(TauMethod::Oracle) {
            tau.oracle = oracle.as_ref().map(|t| tjurina::tau_oracle(s, t));
        }

        let mut checks = Checks::default();
        let mut diffs = Vec::new();
        let mut record = |check: &str, left: String, right: String| {
            let same = left == right;
            if !same {
                diffs.push(Diff {
                    check: check.to_owned(),
                    left,
                    right,
                });
            }
            Some(same)
        };

        if let Some(naive) = &oracle {
            let acc = delorme::run_accelerated(s);
            checks.accelerated = record(
                "accelerated vs naive (g; u; c)",
                trace_key(naive),
                trace_key(&acc),
            );
            checks.generators = record(
                "generators: recursion vs oracle",
                format!("{:?}", summary.generators),
                format!("{:?}", naive.generators),
            );
            checks.conductor = record(
                "conductor: recursion vs oracle",
                summary.conductor_lambda.to_string(),
                naive.conductor_lambda.to_string(),
            );
        }
        if s.p() > 2 {
            let bad = min_term_violations(s, &summary.steps);
            checks.min_term = record("min-term rule violations", "[]".into(), format!("{bad:?}"));
        }
        let present = tau.present();
        if present.len() >= 2 {
            let (first_name, first) = present[0];
            let mut agree = true;
            for &(name, v) in &present[1..] {
                if v != first {
                    agree = false;
                    record(
                        &format!("tau: {first_name} vs {name}"),
                        first.to_string(),
                        v.to_string(),
                    );
                }
            }
            checks.tau = Some(agree);
        }

        Ok(Report {
            input: Input { p: s.p(), m: s.m() },
            euclid: summary.euclid,
            steps: summary.steps,
            generators: summary.generators,
            card: summary.card,
            mu: s.mu(),
            conductor_lambda: summary.conductor_lambda,
            tau,
            ok: checks.all_ok(),
            checks,
            diffs,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering laid out like hand-computed worked examples.
    pub fn to_table(&self) -> String {
        let e = &self.euclid;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "Gamma = <{},{}>   mu = {}   level s = {}",
            self.input.p, self.input.m, self.mu, e.s
        );
        let _ = writeln!(out);

        let mut rows = vec![vec![
            "i".to_owned(),
            "p_i".into(),
            "k_i".into(),
            "n_i".into(),
            "N_i".into(),
            "A_i".into(),
            "B_i".into(),
        ]];
        for i in 0..=e.s {
            let (n, big_n) = if i == 0 {
                ("-".to_owned(), "-".to_owned())
            } else {
                (e.n(i).to_string(), e.big_n(i).to_string())
            };
            rows.push(vec![
                i.to_string(),
                e.p(i).to_string(),
                e.k(i).to_string(),
                n,
                big_n,
                e.a(i).to_string(),
                e.b(i).to_string(),
            ]);
        }
        render_rows(&mut out, &rows);

        if !self.steps.is_empty() {
            let _ = writeln!(out);
            let mut rows = vec![vec![
                "i".to_owned(),
                "j".into(),
                "gamma_i".into(),
                "".into(),
                "r_i=p_j".into(),
                "g_i".into(),
                "u_i".into(),
                "c_i".into(),
            ]];
            for st in &self.steps {
                let wrap = |v: i64| {
                    if st.minimal {
                        v.to_string()
                    } else {
                        format!("({v})")
                    }
                };
                rows.push(vec![
                    st.i.to_string(),
                    st.j.to_string(),
                    gamma_label(st.i, st.j, st.r.is_none()),
                    st.gamma.to_string(),
                    st.r.map_or("-".into(), |r| r.to_string()),
                    wrap(st.g),
                    wrap(st.u),
                    st.c.to_string(),
                ]);
            }
            render_rows(&mut out, &rows);
        }

        let _ = writeln!(out);
        let _ = writeln!(out, "G = {:?}", self.generators);
        let _ = writeln!(out, "|G| = {}", self.card);
        let _ = writeln!(out, "c(Lambda_gen) = {}", self.conductor_lambda);
        for (name, v) in self.tau.present() {
            let _ = writeln!(out, "tau_gen ({name}) = {v}   mu - tau = {}", self.mu - v);
        }
        let fmt = |c: Option<bool>| match c {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "skipped",
        };
        let c = &self.checks;
        let _ = writeln!(
            out,
            "checks: accelerated={} generators={} conductor={} min_term={} tau={}",
            fmt(c.accelerated),
            fmt(c.generators),
            fmt(c.conductor),
            fmt(c.min_term),
            fmt(c.tau)
        );
        let _ = writeln!(out, "ok = {}", self.ok);
        out
    }
}

fn trace_key(t: &OracleTrace) -> String {
    format!("{:?}; {:?}; {:?}", t.generators, t.u, t.c)
}

fn gamma_label(i: usize, j: usize, extension: bool) -> String {
    if extension {
        return "(k_0-1)p =".into();
    }
    match (j % 2 == 1, i % 2 == 1) {
        (true, true) => format!("(B_{j}-1)p ="),
        (true, false) => "p =".into(),
        (false, true) => format!("(A_{j}-1)m ="),
        (false, false) => "m =".into(),
    }
}

fn render_rows(out: &mut String, rows: &[Vec<String>]) {
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for (k, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join(" | ").trim_end());
        if k == 0 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            let _ = writeln!(out, "{}", rule.join("-+-"));
        }
    }
}

/// Whether `err` reflects bad input rather than a disagreement.
pub fn is_input_error(err: &Error) -> bool {
    matches!(err, Error::NotCoprime { .. } | Error::OutOfRange { .. })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let s = SemigroupPM::new(10, 23).unwrap();
        let r = Report::build(&s, Options::default()).unwrap();
        let text = r.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(back.ok);
    }

    #[test]
    fn json_key_order() {
        let s = SemigroupPM::new(5, 12).unwrap();
        let text = Report::build(&s, Options::default()).unwrap().to_json();
        // Top-level keys sit at two-space indentation in pretty output.
        let keys = |indent: &str| -> Vec<String> {
            text.lines()
                .filter_map(|l| l.strip_prefix(indent))
                .filter(|l| l.starts_with('"'))
                .map(|l| l[1..].split('"').next().unwrap().to_owned())
                .collect()
        };
        assert_eq!(
            keys("  "),
            [
                "input",
                "euclid",
                "steps",
                "G",
                "card",
                "mu",
                "conductor_lambda",
                "tau",
                "ok",
                "checks"
            ]
        );
        let mut step_keys = keys("      ");
        step_keys.truncate(8);
        assert_eq!(
            step_keys,
            ["i", "j", "gamma", "r", "g", "u", "c", "minimal"]
        );
        let euclid_keys: Vec<String> = keys("    ").into_iter().take(7).collect();
        assert_eq!(euclid_keys, ["p", "m", "s", "p_seq", "k_seq", "A", "B"]);
    }

    #[test]
    fn table_layout_ten_twenty_three() {
        let s = SemigroupPM::new(10, 23).unwrap();
        let table = Report::build(&s, Options::default()).unwrap().to_table();
        assert!(
            table.contains("(A_2-1)m = | 46 |       1 |    34 |    80"),
            "{table}"
        );
        assert!(table.contains("(131)"));
        assert!(table.contains("(141)"));
        assert!(table.contains("c(Lambda_gen) = 109"));
    }

    #[test]
    fn tau_method_selection() {
        let s = SemigroupPM::new(10, 23).unwrap();
        let r = Report::build(
            &s,
            Options {
                run_oracle: false,
                tau_method: TauMethod::Abm,
            },
        )
        .unwrap();
        assert_eq!(
            r.tau,
            TauValues {
                staircase: None,
                abm: Some(157),
                oracle: None
            }
        );
        assert_eq!(r.checks.generators, None);
        assert!(r.ok);
    }
}
