//! The `clustercap` command line.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 bad input, 3
//! degenerate constraint, 4 resource guard tripped, 5 internal error.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::capacity::{capacity, capacity_spectral, CapacityEstimate};
use crate::cluster::{cluster_genfun, GenFun};
use crate::error::Error;
use crate::input::ConstraintSpec;
use crate::nonoverlap::{levenshtein_bound, max_code_with_lengths, DEFAULT_SEARCH_BUDGET};
use crate::report::{count_row_json, genfun_to_json, BoundJson, CapacityReport};
use crate::sample::{random_forbidden_set, rng};
use crate::series::{Recurrence, DEFAULT_BRUTE_FORCE_BUDGET};
use crate::verify::{all_pass, verify_set, Check, Status};
use crate::words::ForbiddenSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Validation(_) => EXIT_INPUT,
        Error::Degenerate(_) => EXIT_DEGENERATE,
        Error::Resource(_) => EXIT_RESOURCE,
        Error::NoRoot(_) | Error::Internal(_) => EXIT_INTERNAL,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "clustercap",
    version,
    about = "Exact counts, generating functions and capacities of codes avoiding forbidden substrings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Constraint spec file (JSON)
    #[arg(long, value_name = "FILE", conflicts_with = "spec")]
    pub input: Option<PathBuf>,
    /// Inline constraint spec (JSON)
    #[arg(long, value_name = "JSON")]
    pub spec: Option<String>,
}

impl Source {
    fn load(&self) -> Result<ForbiddenSet, Error> {
        let text = match (&self.input, &self.spec) {
            (Some(path), _) => std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?,
            (None, Some(spec)) => spec.clone(),
            (None, None) => return Err(Error::Input("give --input FILE or --spec JSON".into())),
        };
        ConstraintSpec::from_json(&text)?.resolve()
    }

    fn given(&self) -> bool {
        self.input.is_some() || self.spec.is_some()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical generating function T/S and its recurrence
    Genfun {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the table of N_F(n)
    Count {
        #[command(flatten)]
        source: Source,
        /// Print N(0) through N(n)
        #[arg(long, conflicts_with_all = ["n_from", "n_to"])]
        n: Option<usize>,
        #[arg(long, requires = "n_to")]
        n_from: Option<usize>,
        #[arg(long)]
        n_to: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Capacity with a guaranteed error, by both methods when feasible
    Capacity {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cross-check the engines on one spec or on seeded random sets
    Verify {
        #[command(flatten)]
        source: Source,
        /// Check this many random reduced sets instead of a spec
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare counts for n up to this value
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Brute-force budget in strings
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_BUDGET)]
        budget: u128,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Bound on the size of variable-length non-overlapping codes
    BoundNonoverlap {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        /// Also find the exact maximum by exhaustive search
        #[arg(long)]
        search: bool,
        /// Shortest word length allowed in the search
        #[arg(long, default_value_t = 1)]
        min_length: usize,
        /// Search budget in branch-and-bound nodes
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List the built-in constraint families
    Families {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Engine(e, format)) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "clustercap: {e}");
            if matches!(e, Error::Degenerate(_)) {
                let _ = match format {
                    Format::Json => writeln!(
                        out,
                        "{}",
                        json!({ "status": "degenerate", "message": e.to_string() })
                    ),
                    Format::Text => writeln!(out, "status: degenerate ({e})"),
                };
            }
            code
        }
        // A closed pipe is not worth a diagnostic.
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "clustercap: {e}");
            EXIT_INTERNAL
        }
    }
}

enum Failure {
    Engine(Error, Format),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

trait Tag<T> {
    fn tag(self, format: Format) -> Result<T, Failure>;
}

impl<T> Tag<T> for Result<T, Error> {
    fn tag(self, format: Format) -> Result<T, Failure> {
        self.map_err(|e| Failure::Engine(e, format))
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Genfun { source, format } => {
            let set = source.load().tag(format)?;
            let (_, f) = cluster_genfun(&set).tag(format)?;
            match format {
                Format::Json => writeln!(out, "{}", genfun_to_json(&f))?,
                Format::Text => write_genfun_text(out, &set, &f)?,
            }
            Ok(EXIT_OK)
        }
        Command::Count {
            source,
            n,
            n_from,
            n_to,
            format,
        } => {
            let (lo, hi) = match (n, n_from, n_to) {
                (Some(n), _, _) => (0, n),
                (None, from, Some(to)) => (from.unwrap_or(0), to),
                _ => {
                    return Err(Failure::Engine(
                        Error::Input("give --n or --n-to".into()),
                        format,
                    ))
                }
            };
            if lo > hi {
                let msg = format!("empty range {lo}..={hi}");
                return Err(Failure::Engine(Error::Input(msg), format));
            }
            let set = source.load().tag(format)?;
            let (_, f) = cluster_genfun(&set).tag(format)?;
            write_counts(out, &f, lo, hi, format)?;
            Ok(EXIT_OK)
        }
        Command::Capacity {
            source,
            eps,
            format,
        } => {
            let set = source.load().tag(format)?;
            let (_, f) = cluster_genfun(&set).tag(format)?;
            let cluster = capacity(&f, eps).tag(format)?;
            let mut estimates = vec![cluster];
            let mut notes = Vec::new();
            match capacity_spectral(&set, eps) {
                Ok(s) => estimates.push(s),
                Err(e @ Error::Resource(_)) => notes.push(format!("spectral method skipped: {e}")),
                Err(e) => return Err(Failure::Engine(e, format)),
            }
            write_capacity(out, &estimates, &notes, format)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            source,
            random,
            seed,
            n,
            budget,
            format,
        } => match random {
            Some(k) => {
                if source.given() {
                    let msg = "--random replaces --input/--spec".to_string();
                    return Err(Failure::Engine(Error::Input(msg), format));
                }
                verify_random(out, k, seed, n, budget, format)
            }
            None => {
                let set = source.load().tag(format)?;
                let checks = verify_set(&set, n, budget).tag(format)?;
                write_checks(out, &checks, format)?;
                Ok(if all_pass(&checks) {
                    EXIT_OK
                } else {
                    EXIT_VERIFY_FAILED
                })
            }
        },
        Command::BoundNonoverlap {
            q,
            n,
            search,
            min_length,
            budget,
            format,
        } => {
            let report = levenshtein_bound(q, n).tag(format)?;
            let found = if search {
                Some(max_code_with_lengths(q, min_length, n, budget).tag(format)?)
            } else {
                None
            };
            let j = BoundJson::new(&report, found.as_ref().map(|(s, c)| (*s, c, min_length)));
            match format {
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string(&j).expect("plain data"))?
                }
                Format::Text => {
                    writeln!(out, "q = {q}, n = {n}")?;
                    writeln!(out, "bound = {} ~ {:.6}", j.bound, j.bound_decimal)?;
                    writeln!(out, "floor = {}", j.floor)?;
                    if let Some(s) = &j.search {
                        writeln!(
                            out,
                            "maximum with lengths {}..={n}: {} {{{}}}",
                            s.min_length,
                            s.size,
                            s.witness.join(", ")
                        )?;
                        writeln!(out, "within bound: {}", s.within_bound)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Families { format } => {
            let families = [
                (
                    "RLL",
                    "d, k",
                    "binary; runs of zeros between ones have length in [d, k]",
                ),
                (
                    "LB",
                    "ell, delta",
                    "binary; every window of length ell has weight within delta of ell/2",
                ),
                ("PA", "ell", "no palindrome of length ell"),
                (
                    "LPA",
                    "ell, p",
                    "no window of length ell has a period below p",
                ),
            ];
            match format {
                Format::Json => {
                    let list: Vec<_> = families
                        .iter()
                        .map(|(name, params, about)| {
                            json!({ "name": name, "params": params.split(", ").collect::<Vec<_>>(), "about": about })
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::Value::Array(list))?;
                }
                Format::Text => {
                    for (name, params, about) in families {
                        writeln!(out, "{name:<4} ({params}): {about}")?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn write_genfun_text(out: &mut dyn Write, set: &ForbiddenSet, f: &GenFun) -> io::Result<()> {
    writeln!(
        out,
        "F = {{{}}} over q = {}",
        set.formatted().join(", "),
        set.q()
    )?;
    writeln!(out, "T(x) = {}", f.t())?;
    writeln!(out, "S(x) = {}", f.s())?;
    writeln!(
        out,
        "recurrence: {}",
        recurrence_text(&Recurrence::from_genfun(f))
    )
}

/// `N(n) - N(n-1) - N(n-2) = [x^n] T(x)`, with integer coefficients shown.
pub fn recurrence_text(rec: &Recurrence) -> String {
    let mut text = String::new();
    for (i, a) in rec.a().iter().enumerate() {
        if a == &BigInt::ZERO {
            continue;
        }
        let term = if i == 0 {
            "N(n)".to_string()
        } else {
            format!("N(n-{i})")
        };
        let mag = a.magnitude();
        let coeff = if *mag == 1u32.into() {
            String::new()
        } else {
            format!("{mag}*")
        };
        let neg = a.sign() == num_bigint::Sign::Minus;
        if text.is_empty() {
            text = format!("{}{coeff}{term}", if neg { "-" } else { "" });
        } else {
            text += &format!(" {} {coeff}{term}", if neg { '-' } else { '+' });
        }
    }
    text + " = [x^n] T(x)"
}

fn write_counts(
    out: &mut dyn Write,
    f: &GenFun,
    lo: usize,
    hi: usize,
    format: Format,
) -> Result<(), Failure> {
    let stream = Recurrence::from_genfun(f)
        .stream()
        .enumerate()
        .skip(lo)
        .take(hi - lo + 1);
    match format {
        Format::Text => writeln!(out, "n\tN_F(n)")?,
        Format::Json => write!(out, "[")?,
    }
    for (n, value) in stream {
        let value = value.tag(format)?;
        match format {
            Format::Text => writeln!(out, "{n}\t{value}")?,
            Format::Json => {
                let sep = if n == lo { "" } else { "," };
                write!(out, "{sep}{}", count_row_json(n, &value))?;
            }
        }
    }
    if format == Format::Json {
        writeln!(out, "]")?;
    }
    Ok(())
}

fn write_capacity(
    out: &mut dyn Write,
    estimates: &[CapacityEstimate],
    notes: &[String],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Json => {
            let reports: Vec<CapacityReport> = estimates.iter().map(CapacityReport::from).collect();
            writeln!(
                out,
                "{}",
                serde_json::to_string(&reports).expect("plain data")
            )
        }
        Format::Text => {
            for e in estimates {
                let r = CapacityReport::from(e);
                writeln!(
                    out,
                    "{:<8} capacity {:.10} +/- {:.1e}   x0 in [{}, {}]",
                    r.method, r.capacity, r.eps, r.x0[0], r.x0[1]
                )?;
            }
            for note in notes {
                writeln!(out, "{note}")?;
            }
            Ok(())
        }
    }
}

fn write_checks(out: &mut dyn Write, checks: &[Check], format: Format) -> io::Result<()> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(checks).expect("plain data")
        ),
        Format::Text => {
            for c in checks {
                writeln!(out, "{} {}: {}", c.status, c.check, c.detail)?;
            }
            Ok(())
        }
    }
}

fn verify_random(
    out: &mut dyn Write,
    count: usize,
    seed: u64,
    n: usize,
    budget: u128,
    format: Format,
) -> Result<i32, Failure> {
    let mut r = rng(seed);
    let mut failures = Vec::new();
    let mut tally: Vec<(&'static str, [usize; 3])> = Vec::new();
    for i in 0..count {
        let set = random_forbidden_set(&mut r, 6, 6);
        let checks = verify_set(&set, n, budget).tag(format)?;
        for c in &checks {
            let slot = match tally.iter().position(|(name, _)| *name == c.check) {
                Some(p) => p,
                None => {
                    tally.push((c.check, [0; 3]));
                    tally.len() - 1
                }
            };
            let k = match c.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Skip => 2,
            };
            tally[slot].1[k] += 1;
            if c.status == Status::Fail {
                failures.push(json!({
                    "index": i,
                    "q": set.q(),
                    "forbidden": set.formatted(),
                    "check": c.check,
                    "detail": c.detail,
                }));
            }
        }
    }
    match format {
        Format::Json => {
            let summary: Vec<_> = tally
                .iter()
                .map(|(name, [p, f, s])| json!({ "check": name, "pass": p, "fail": f, "skip": s }))
                .collect();
            let doc =
                json!({ "seed": seed, "sets": count, "checks": summary, "failures": failures });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            writeln!(out, "{count} random sets, seed {seed}")?;
            for (name, [p, f, s]) in &tally {
                let status = if *f == 0 { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {name}: {p} passed, {f} failed, {s} skipped")?;
            }
            for f in &failures {
                writeln!(out, "failure: {f}")?;
            }
        }
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}
