//! Command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when two routes disagree,
//! 2 on invalid input.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::report::{is_input_error, Options, Report, TauMethod, ORACLE_PM_LIMIT};
use crate::semigroup::SemigroupPM;
use crate::sweep::{self, SweepRange};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "lambda-gen",
    version,
    about = "Generic value sets of differentials for plane branches with semigroup <p,m>"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euclid data, recursion trace, generators, conductor and Tjurina number
    Analyze {
        p: i64,
        m: i64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, value_enum, default_value_t = TauMethod::All)]
        tau_method: TauMethod,
        /// Skip Delorme's algorithm (always skipped when pm > 10^7)
        #[arg(long)]
        no_oracle: bool,
    },
    /// Check the closed form against both Delorme runs and all three tau methods
    Verify {
        p: i64,
        m: i64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Verify every coprime pair with min_p <= p <= max_p and p < m <= max_m
    Sweep {
        #[arg(value_name = "MIN_P")]
        min_p_pos: Option<i64>,
        #[arg(value_name = "MAX_P")]
        max_p_pos: Option<i64>,
        #[arg(value_name = "MAX_M")]
        max_m_pos: Option<i64>,
        #[arg(long)]
        min_p: Option<i64>,
        #[arg(long)]
        max_p: Option<i64>,
        #[arg(long)]
        max_m: Option<i64>,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Which tau value fills the `tau` column
        #[arg(long, value_enum, default_value_t = TauMethod::All)]
        tau_method: TauMethod,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Analyze {
            p,
            m,
            format,
            tau_method,
            no_oracle,
        } => analyze(p, m, format, tau_method, no_oracle, out, err),
        Command::Verify { p, m, format } => verify(p, m, format, out, err),
        Command::Sweep {
            min_p_pos,
            max_p_pos,
            max_m_pos,
            min_p,
            max_p,
            max_m,
            jobs,
            format,
            tau_method,
        } => {
            let (Some(min_p), Some(max_p), Some(max_m)) = (
                min_p.or(min_p_pos),
                max_p.or(max_p_pos),
                max_m.or(max_m_pos),
            ) else {
                let _ = writeln!(err, "error: sweep needs MIN_P, MAX_P and MAX_M");
                return EXIT_INPUT;
            };
            run_sweep(min_p, max_p, max_m, jobs, format, tau_method, out, err)
        }
    }
}

fn semigroup(p: i64, m: i64, err: &mut dyn Write) -> Option<SemigroupPM> {
    match SemigroupPM::new(p, m) {
        Ok(s) => Some(s),
        Err(e) => {
            let msg = match e {
                Error::NotCoprime { .. } => "p and m must be coprime".to_owned(),
                other => other.to_string(),
            };
            let _ = writeln!(err, "error: {msg} (got p = {p}, m = {m})");
            None
        }
    }
}

fn fail(e: Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    if is_input_error(&e) {
        EXIT_INPUT
    } else {
        EXIT_DISAGREE
    }
}

fn render(report: &Report, format: Format, out: &mut dyn Write) {
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Table | Format::Csv => report.to_table(),
    };
    let _ = out.write_all(text.as_bytes());
}

fn print_diffs(report: &Report, err: &mut dyn Write) {
    for d in &report.diffs {
        let _ = writeln!(
            err,
            "MISMATCH <{},{}> {}: {} != {}",
            report.input.p, report.input.m, d.check, d.left, d.right
        );
    }
}

fn analyze(
    p: i64,
    m: i64,
    format: Format,
    tau_method: TauMethod,
    no_oracle: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(s) = semigroup(p, m, err) else {
        return EXIT_INPUT;
    };
    let opts = Options {
        run_oracle: !no_oracle && s.pm() <= ORACLE_PM_LIMIT,
        tau_method,
    };
    match Report::build(&s, opts) {
        Ok(report) => {
            render(&report, format, out);
            print_diffs(&report, err);
            if report.ok {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            }
        }
        Err(e) => fail(e, err),
    }
}

fn verify(p: i64, m: i64, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(s) = semigroup(p, m, err) else {
        return EXIT_INPUT;
    };
    if s.pm() > ORACLE_PM_LIMIT {
        let _ = writeln!(
            err,
            "error: pm = {} exceeds {ORACLE_PM_LIMIT}; too large for Delorme's algorithm",
            s.pm()
        );
        return EXIT_INPUT;
    }
    match Report::build(&s, Options::default()) {
        Ok(report) => {
            match format {
                Format::Json => render(&report, format, out),
                _ => {
                    let _ = writeln!(
                        out,
                        "<{p},{m}>: |G| = {}, c(Lambda_gen) = {}, tau_gen = {}, {}",
                        report.card,
                        report.conductor_lambda,
                        report.tau.any().unwrap_or_default(),
                        if report.ok { "ok" } else { "MISMATCH" }
                    );
                }
            }
            print_diffs(&report, err);
            if report.ok {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            }
        }
        Err(e) => fail(e, err),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_sweep(
    min_p: i64,
    max_p: i64,
    max_m: i64,
    jobs: Option<usize>,
    format: Format,
    tau_method: TauMethod,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let range = match SweepRange::new(min_p, max_p, max_m) {
        Ok(r) => r,
        Err(_) => {
            let _ = writeln!(
                err,
                "error: expected 2 <= min_p <= max_p <= max_m <= {} with min_p < max_m, got {min_p} {max_p} {max_m}",
                sweep::SWEEP_MAX_M
            );
            return EXIT_INPUT;
        }
    };
    if jobs == Some(0) {
        let _ = writeln!(err, "error: --jobs must be at least 1");
        return EXIT_INPUT;
    }
    let rows = sweep::run(range, tau_method, jobs);
    let summary = sweep::summarize_rows(&rows);
    let text = match format {
        Format::Json => sweep::to_json(&rows) + "\n",
        Format::Csv | Format::Table => sweep::to_csv(&rows),
    };
    let _ = out.write_all(text.as_bytes());
    for r in rows.iter().filter(|r| !r.ok) {
        let _ = writeln!(
            err,
            "FAIL <{},{}>: {}",
            r.p,
            r.m,
            r.error.as_deref().unwrap_or("mismatch")
        );
    }
    let _ = writeln!(
        err,
        "pairs tested: {}, failures: {}",
        summary.pairs, summary.failures
    );
    if summary.failures == 0 {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    }
}
