//! Differential sweep over all coprime pairs in a range.
//!
//! Every pair is an independent work item. With the `parallel` feature the
//! items are spread over a rayon pool; rows always come back in `(p, m)`
//! order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::delorme;
use crate::error::{Error, Result};
use crate::euclid::{compute_euclid, gcd};
use crate::report::{Options, Report, TauMethod};
use crate::semigroup::SemigroupPM;
use crate::tjurina;

/// Upper bound on `m` for sweeps; the oracle costs `O(pm)` per pair.
pub const SWEEP_MAX_M: i64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRange {
    pub min_p: i64,
    pub max_p: i64,
    pub max_m: i64,
}

impl SweepRange {
    pub fn new(min_p: i64, max_p: i64, max_m: i64) -> Result<Self> {
        if !(2 <= min_p
            && min_p <= max_p
            && max_p <= max_m
            && min_p < max_m
            && max_m <= SWEEP_MAX_M)
        {
            return Err(Error::OutOfRange {
                p: min_p,
                m: max_m,
                max: SWEEP_MAX_M,
            });
        }
        Ok(Self {
            min_p,
            max_p,
            max_m,
        })
    }

    /// Coprime pairs `min_p ≤ p ≤ max_p`, `p < m ≤ max_m`, lexicographic.
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        (self.min_p..=self.max_p)
            .flat_map(|p| (p + 1..=self.max_m).map(move |m| (p, m)))
            .filter(|&(p, m)| gcd(p, m) == 1)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: i64,
    pub m: i64,
    pub s: usize,
    #[serde(rename = "N1")]
    pub big_n1: i64,
    pub card: usize,
    pub conductor_lambda: i64,
    pub tau: i64,
    pub ok: bool,
    /// Why the row failed, if it did.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub pairs: usize,
    pub failures: usize,
}

/// Full verification of one pair, reduced to a sweep row.
pub fn sweep_pair(p: i64, m: i64, tau_method: TauMethod) -> SweepRow {
    let s = SemigroupPM::new(p, m).expect("sweep pairs are valid");
    let e = compute_euclid(&s).expect("coprime");
    let opts = Options {
        run_oracle: true,
        tau_method: TauMethod::All,
    };
    match Report::build(&s, opts) {
        Ok(r) => {
            let tau = match tau_method {
                TauMethod::Staircase => r.tau.staircase,
                TauMethod::Abm => r.tau.abm,
                TauMethod::Oracle => r.tau.oracle,
                TauMethod::All => r.tau.any(),
            }
            .or(r.tau.any())
            .expect("at least one tau");
            let error = (!r.ok).then(|| {
                r.diffs
                    .iter()
                    .map(|d| format!("{}: {} != {}", d.check, d.left, d.right))
                    .collect::<Vec<_>>()
                    .join("; ")
            });
            SweepRow {
                p,
                m,
                s: e.s,
                big_n1: e.big_n(1),
                card: r.card,
                conductor_lambda: r.conductor_lambda,
                tau,
                ok: r.ok,
                error,
            }
        }
        Err(err) => {
            let t = delorme::run_naive(&s);
            SweepRow {
                p,
                m,
                s: e.s,
                big_n1: e.big_n(1),
                card: t.generators.len(),
                conductor_lambda: t.conductor_lambda,
                tau: tjurina::tau_oracle(&s, &t),
                ok: false,
                error: Some(err.to_string()),
            }
        }
    }
}

pub fn run_sequential(range: SweepRange, tau_method: TauMethod) -> Vec<SweepRow> {
    range
        .pairs()
        .into_iter()
        .map(|(p, m)| sweep_pair(p, m, tau_method))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn run_parallel(range: SweepRange, tau_method: TauMethod) -> Vec<SweepRow> {
    use rayon::prelude::*;
    range
        .pairs()
        .into_par_iter()
        .map(|(p, m)| sweep_pair(p, m, tau_method))
        .collect()
}

/// Runs the sweep on `jobs` workers (all cores when `None`). Without the
/// `parallel` feature the sweep is sequential and `jobs` is ignored.
pub fn run(range: SweepRange, tau_method: TauMethod, jobs: Option<usize>) -> Vec<SweepRow> {
    #[cfg(feature = "parallel")]
    {
        match jobs {
            Some(1) => run_sequential(range, tau_method),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(|| run_parallel(range, tau_method)),
            None => run_parallel(range, tau_method),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        run_sequential(range, tau_method)
    }
}

pub fn summarize_rows(rows: &[SweepRow]) -> SweepSummary {
    SweepSummary {
        pairs: rows.len(),
        failures: rows.iter().filter(|r| !r.ok).count(),
    }
}

pub const CSV_HEADER: &str = "p,m,s,N1,card,conductor_lambda,tau,ok";

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.p, r.m, r.s, r.big_n1, r.card, r.conductor_lambda, r.tau, r.ok
        );
    }
    out
}

#[derive(Serialize)]
struct SweepJson<'a> {
    rows: &'a [SweepRow],
    summary: SweepSummary,
}

pub fn to_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(&SweepJson {
        rows,
        summary: summarize_rows(rows),
    })
    .expect("rows serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_validation() {
        assert!(SweepRange::new(5, 3, 10).is_err());
        assert!(SweepRange::new(1, 3, 10).is_err());
        assert!(SweepRange::new(10, 10, 10).is_err());
        assert!(SweepRange::new(3, 11, 10).is_err());
        assert!(SweepRange::new(3, 10, SWEEP_MAX_M + 1).is_err());
        assert!(SweepRange::new(3, 40, 40).is_ok());
    }

    #[test]
    fn pairs_are_coprime_and_ordered() {
        let pairs = SweepRange::new(2, 4, 9).unwrap().pairs();
        assert_eq!(
            pairs,
            [
                (2, 3),
                (2, 5),
                (2, 7),
                (2, 9),
                (3, 4),
                (3, 5),
                (3, 7),
                (3, 8),
                (4, 5),
                (4, 7),
                (4, 9)
            ]
        );
    }

    #[test]
    fn p_two_line() {
        let rows = run_sequential(SweepRange::new(2, 2, 50).unwrap(), TauMethod::All);
        for r in &rows {
            assert!(r.ok);
            assert_eq!(r.card, 2);
            assert_eq!(r.tau, r.m - 1);
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let range = SweepRange::new(3, 20, 40).unwrap();
        assert_eq!(
            run_parallel(range, TauMethod::All),
            run_sequential(range, TauMethod::All)
        );
    }

    #[test]
    fn csv_shape() {
        let rows = vec![sweep_pair(10, 23, TauMethod::All)];
        assert_eq!(
            to_csv(&rows),
            "p,m,s,N1,card,conductor_lambda,tau,ok\n10,23,2,6,6,109,157,true\n"
        );
    }
}
