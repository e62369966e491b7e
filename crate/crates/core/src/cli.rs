//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::blocks::bad_points;
use crate::constructor::{enumerate_fpf, enumerate_single_cycle};
use crate::error::Error;
use crate::formulas::{self, c_fpf_involution, c_transposition, T};
use crate::oracle::Oracle;
use crate::perm::parse;
use crate::series::{fpf_table, tkn_table};
use crate::verify::{run_verify, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_CLOSED_FORM: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kommute", version, about = "Count and enumerate permutations alpha with H(alpha beta, beta alpha) = k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count the permutations that k-commute with beta.
    Count {
        /// beta in cycle notation, e.g. "(1 2 3)(4 5)".
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Degree of beta.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// List the permutations that k-commute with beta, one per line.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = EnumKind::SingleCycle)]
        kind: EnumKind,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check every closed form and invariant against exhaustive search.
    Verify {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
        /// Perturb f(3) to confirm that failures are reported.
        #[arg(long, hide = true)]
        corrupt_f: bool,
    },
    /// Print a table of exact counts as CSV.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Print generating-function coefficients, with factorials cleared, as CSV.
    Gf {
        #[arg(long, value_enum)]
        kind: GfKind,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Print terms of an OEIS sequence, one per line.
    Oeis {
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    /// All bad points in one cycle of beta (k >= 3).
    SingleCycle,
    /// beta a fixed-point-free involution, k even.
    Fpf,
    /// Exhaustive filter over S_n.
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Tkn,
    Transposition,
    Fpf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GfKind {
    Tkn,
    Fpf,
}

const TABLE_MAX: usize = 30;
const GF_MAX: usize = 12;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoClosedForm { .. } => EXIT_NO_CLOSED_FORM,
        Error::Internal(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Error::OutputClosed) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Error::OutputClosed;
    }
    Error::Internal(format!("write failed: {e}"))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Count { beta, n, k, method, jobs, json } => {
            let beta = parse(&beta, n)?;
            let (count, method, provenance) = match method {
                Method::Formula => {
                    let r = formulas::count(&beta.cycle_type(), k)?;
                    (r.value, "formula", r.provenance.to_string())
                }
                Method::Brute => {
                    let d = Oracle::from_env().with_jobs(jobs).distribution(&beta)?;
                    (d.get(k), "brute", "exhaustive".to_string())
                }
            };
            if json {
                let report = json!({
                    "beta": beta.to_string(),
                    "n": n,
                    "k": k,
                    "count": count.to_string(),
                    "method": method,
                    "provenance": provenance,
                });
                writeln!(out, "{report}").map_err(io)?;
            } else {
                writeln!(out, "{count}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { beta, n, k, kind, jobs, json } => {
            let beta = parse(&beta, n)?;
            let set = match kind {
                EnumKind::SingleCycle => enumerate_single_cycle(&beta, k)?,
                EnumKind::Fpf if k % 2 == 1 => {
                    beta.cycle_type()
                        .fpf_involution_half()
                        .ok_or_else(|| Error::InvalidChoice(format!("{beta} is not a fixed-point-free involution")))?;
                    Default::default()
                }
                EnumKind::Fpf => enumerate_fpf(&beta, k / 2)?,
                EnumKind::Brute => Oracle::from_env().with_jobs(jobs).k_commuting(&beta, k)?,
            };
            for alpha in &set {
                if json {
                    let bad: Vec<usize> = bad_points(alpha, &beta)?.into_iter().collect();
                    let rec = json!({ "alpha": alpha.to_string(), "bad_points": bad });
                    writeln!(out, "{rec}").map_err(io)?;
                } else {
                    writeln!(out, "{alpha}").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { n_max, jobs, json, corrupt_f } => {
            let bound = Oracle::from_env().max_n();
            if n_max > bound {
                return Err(Error::TooLarge { n: n_max, bound });
            }
            let report = run_verify(&VerifyOptions { n_max, jobs, corrupt_f });
            if json {
                let doc = json!({ "all_passed": report.all_passed(), "checks": report.checks });
                writeln!(out, "{doc}").map_err(io)?;
            } else {
                for c in &report.checks {
                    match &c.counterexample {
                        None => writeln!(out, "PASS {} [{} cases]", c.name, c.cases),
                        Some(x) => writeln!(out, "FAIL {}: {x}", c.name),
                    }
                    .map_err(io)?;
                }
                let failed = report.failures().count();
                writeln!(out, "{} checks, {failed} failed", report.checks.len()).map_err(io)?;
            }
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Table { kind, n_max } => {
            if n_max > TABLE_MAX {
                return Err(Error::TooLarge { n: n_max, bound: TABLE_MAX });
            }
            write_csv(out, &table(kind, n_max)?)?;
            Ok(EXIT_OK)
        }
        Command::Gf { kind, n_max } => {
            if n_max > GF_MAX {
                return Err(Error::TooLarge { n: n_max, bound: GF_MAX });
            }
            let (label, col, first, rows) = match kind {
                GfKind::Tkn => ("n", "k", 1, tkn_table(n_max.max(1))?),
                GfKind::Fpf => ("m", "j", 2, fpf_table(n_max.max(2))?),
            };
            let width = rows.len();
            let mut csv = vec![header(label, col, width)];
            for (i, row) in rows.iter().enumerate().skip(first) {
                let mut line = vec![i.to_string()];
                line.extend(row.iter().map(|v| v.to_string()));
                csv.push(line);
            }
            write_csv(out, &csv)?;
            Ok(EXIT_OK)
        }
        Command::Oeis { sequence, count } => {
            for term in oeis(&sequence, count)? {
                writeln!(out, "{term}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn header(label: &str, col: &str, width: usize) -> Vec<String> {
    let mut h = vec![label.to_string()];
    h.extend((0..width).map(|i| format!("{col}{i}")));
    h
}

fn write_csv(out: &mut dyn Write, rows: &[Vec<String>]) -> Result<(), Error> {
    for row in rows {
        out.write_all(row.join(",").as_bytes()).map_err(io)?;
        out.write_all(b"\n").map_err(io)?;
    }
    Ok(())
}

/// Rows of exact counts, columns `k = 0..=n_max`, zero where the count vanishes.
fn table(kind: TableKind, n_max: usize) -> Result<Vec<Vec<String>>, Error> {
    let (label, col, first) = match kind {
        TableKind::Tkn => ("n", "k", 1),
        TableKind::Transposition => ("n", "k", 2),
        TableKind::Fpf => ("m", "j", 2),
    };
    let mut rows = vec![header(label, col, n_max + 1)];
    for n in first..=n_max {
        let mut line = vec![n.to_string()];
        for k in 0..=n_max {
            let v = match kind {
                TableKind::Tkn if k <= n => T(k, n)?,
                TableKind::Tkn => BigUint::default(),
                TableKind::Transposition => c_transposition(k, n)?,
                TableKind::Fpf if k <= n => c_fpf_involution(2 * k, n)?,
                TableKind::Fpf => BigUint::default(),
            };
            line.push(v.to_string());
        }
        rows.push(line);
    }
    Ok(rows)
}

/// The first `count` terms of a supported OEIS sequence.
pub fn oeis(sequence: &str, count: usize) -> Result<Vec<BigUint>, Error> {
    let id = sequence.trim().to_ascii_uppercase();
    let terms = match id.as_str() {
        "A000757" => (0..count).map(formulas::f).collect(),
        "A053871" => formulas::a_table(count).into_iter().take(count).collect(),
        "A233440" => {
            // Rows n = 1, 2, ... with k = 0..=n.
            let mut out = Vec::with_capacity(count);
            let mut n = 1;
            while out.len() < count {
                for k in 0..=n {
                    if out.len() == count {
                        break;
                    }
                    out.push(T(k, n)?);
                }
                n += 1;
            }
            out
        }
        "A208529" => (2..count + 2).map(|n| c_transposition(0, n)).collect::<Result<_, _>>()?,
        "A208528" => (2..count + 2).map(|n| c_transposition(3, n)).collect::<Result<_, _>>()?,
        "A098916" => (3..count + 3).map(|n| c_transposition(4, n)).collect::<Result<_, _>>()?,
        _ => {
            return Err(Error::OutOfRange(format!(
                "unknown sequence {sequence}; expected one of A000757, A053871, A233440, A208529, A208528, A098916"
            )))
        }
    };
    Ok(terms)
}
