//! Command-line front end.
//!
//! [`run`] parses arguments, validates every value before it reaches the
//! library, and renders plain text (default), JSON (`--json`) or CSV
//! (`--csv`, two-term only). Exit codes: 0 success, 1 bad input or domain
//! error, 2 no answer (infeasible restricted problem, exhausted budget).

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::Error;
use crate::greedy::{self, GreedySequence};
use crate::ineq::{self, Direction, PositiveSequence, Smoothing};
use crate::optimal::{self, json_int, SearchOptions};
use crate::rationals::{HalfOpenInterval, Rational};
use crate::twoterm;

/// Sylvester-type sequences double in digit count per term; past this many
/// terms the output gets large quickly.
const SYLVESTER_WARN_TERMS: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "egyptian",
    version,
    about = "Greedy and best Egyptian fraction underapproximations"
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Emit CSV (two-term only).
    #[arg(long, global = true)]
    csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// n-term greedy underapproximation sequence of THETA.
    Greedy { theta: String, n: String },
    /// First N terms of Sylvester's sequence.
    Sylvester { n: String },
    /// Greedy sequence of P/Q via the closed form (requires P | Q + 1).
    ClosedForm { p: String, q: String, n: String },
    /// Interval of THETA on which TERMS is the greedy sequence.
    Criterion {
        terms: String,
        theta: Option<String>,
    },
    /// Best N-term underapproximation with every optimal witness.
    Best {
        theta: String,
        n: String,
        /// Comma-separated allowed denominators.
        #[arg(long)]
        restrict: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Greedy versus best, with a classification.
    Report {
        theta: String,
        n: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// All two-term competitors of greedy pairs starting with A1.
    TwoTerm { a1: String },
    /// The greedy pair (a1, a2) whose subinterval holds THETA.
    Locate { theta: String },
    /// Check the prefix-product inequality for comma-separated U and V.
    VerifyIneq {
        u: String,
        v: String,
        #[arg(long, value_enum, default_value_t = DirectionArg::Inc)]
        direction: DirectionArg,
    },
    /// Tabulate the additive split identity for n = 1..N_MAX.
    EgSplit {
        theta: String,
        n_max: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(clap::Args, Debug)]
struct SearchArgs {
    /// Maximum number of search nodes.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            budget: Some(self.budget),
            threads: self.threads.max(1),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    Inc,
    Dec,
}

/// What a CLI invocation produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// A failure with its exit code, rendered as one line on stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_infeasible() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<crate::error::IneqError> for Failure {
    fn from(e: crate::error::IneqError) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

/// `name` is a positional placeholder like `THETA` or a flag like `--restrict`.
fn bad_arg(name: &str, detail: impl std::fmt::Display) -> Failure {
    let shown = if name.starts_with("--") {
        name.to_string()
    } else {
        format!("<{name}>")
    };
    Failure {
        code: 1,
        message: format!("invalid {shown}: {detail}"),
    }
}

fn parse_rational(name: &str, s: &str) -> Result<Rational, Failure> {
    s.parse::<Rational>().map_err(|e| bad_arg(name, e))
}

fn parse_theta(name: &str, s: &str) -> Result<Rational, Failure> {
    let theta = parse_rational(name, s)?;
    if !theta.in_unit_interval() {
        return Err(bad_arg(name, Error::ThetaOutOfRange(theta)));
    }
    Ok(theta)
}

fn parse_count(name: &str, s: &str) -> Result<usize, Failure> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad_arg(
            name,
            format!("expected a positive integer, got {s:?}"),
        ));
    }
    let n: usize = s
        .parse()
        .map_err(|_| bad_arg(name, format!("{s} is too large")))?;
    if n == 0 {
        return Err(bad_arg(name, "must be at least 1"));
    }
    Ok(n)
}

fn parse_positive_int(name: &str, s: &str) -> Result<BigInt, Failure> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad_arg(
            name,
            format!("expected a positive integer, got {s:?}"),
        ));
    }
    let v: BigInt = s
        .parse()
        .map_err(|_| bad_arg(name, format!("not an integer: {s:?}")))?;
    if v < BigInt::from(1) {
        return Err(bad_arg(name, "must be at least 1"));
    }
    Ok(v)
}

fn parse_int_list(name: &str, s: &str) -> Result<Vec<BigInt>, Failure> {
    s.split(',')
        .map(|item| parse_positive_int(name, item))
        .collect()
}

fn parse_rational_list(name: &str, s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|item| parse_rational(name, item))
        .collect()
}

fn interval_json(iv: &HalfOpenInterval) -> Value {
    json!({ "lo": iv.lo().to_string(), "hi": iv.hi().to_string() })
}

/// Terms as decimal strings; they outgrow 64 bits quickly.
fn terms_json(terms: &[BigInt]) -> Value {
    Value::Array(terms.iter().map(|t| Value::String(t.to_string())).collect())
}

fn sequence_json(seq: &GreedySequence) -> Value {
    json!({
        "terms": terms_json(seq.terms()),
        "value": seq.reciprocal_sum().to_string(),
        "interval": interval_json(&greedy::limit_bounds(seq)),
    })
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

struct Output {
    stdout: String,
    stderr: String,
}

impl Output {
    fn new() -> Self {
        Output {
            stdout: String::new(),
            stderr: String::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: rendered,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let mut out = Output::new();
    match dispatch(&cli, &mut out) {
        Ok(code) => Outcome {
            code,
            stdout: out.stdout,
            stderr: out.stderr,
        },
        Err(f) => {
            out.stderr.push_str(&format!("error: {}\n", f.message));
            Outcome {
                code: f.code,
                stdout: String::new(),
                stderr: out.stderr,
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<u8, Failure> {
    if cli.csv && !matches!(cli.command, Command::TwoTerm { .. }) {
        return Err(Failure {
            code: 1,
            message: "--csv is only supported by two-term".into(),
        });
    }
    match &cli.command {
        Command::Greedy { theta, n } => {
            let theta = parse_theta("THETA", theta)?;
            let n = parse_count("N", n)?;
            let seq = greedy::greedy_sequence(&theta, n)?;
            if cli.json {
                let mut v = sequence_json(&seq);
                v["theta"] = Value::String(theta.to_string());
                out.stdout.push_str(&render_json(&v));
            } else {
                out.line(seq.to_string());
            }
        }
        Command::Sylvester { n } => {
            let n = parse_count("N", n)?;
            warn_growth(out, n);
            emit_sequence(cli, out, &greedy::sylvester(n));
        }
        Command::ClosedForm { p, q, n } => {
            let p = parse_positive_int("P", p)?;
            let q = parse_positive_int("Q", q)?;
            let n = parse_count("N", n)?;
            warn_growth(out, n);
            emit_sequence(cli, out, &greedy::closed_form_sequence(p, q, n)?);
        }
        Command::Criterion { terms, theta } => {
            let terms = parse_int_list("TERMS", terms)?;
            let seq = GreedySequence::new(terms).map_err(|e| bad_arg("TERMS", e))?;
            let iv = greedy::criterion_interval(&seq);
            let theta = theta
                .as_deref()
                .map(|t| parse_theta("THETA", t))
                .transpose()?;
            let member = theta.as_ref().map(|t| iv.contains(t));
            if cli.json {
                let mut v = json!({
                    "terms": terms_json(seq.terms()),
                    "interval": interval_json(&iv),
                });
                if let (Some(t), Some(m)) = (&theta, member) {
                    v["theta"] = Value::String(t.to_string());
                    v["is_greedy"] = Value::Bool(m);
                }
                out.stdout.push_str(&render_json(&v));
            } else {
                out.line(iv.to_string());
                if let (Some(t), Some(m)) = (&theta, member) {
                    out.line(format!("greedy for {t}: {m}"));
                }
            }
        }
        Command::Best {
            theta,
            n,
            restrict,
            search,
        } => {
            let theta = parse_theta("THETA", theta)?;
            let n = parse_count("N", n)?;
            let options = search.options();
            let best = match restrict {
                Some(list) => {
                    let allowed = parse_int_list("--restrict", list)?;
                    if let Some(x) = allowed.iter().find(|x| **x < BigInt::from(2)) {
                        return Err(bad_arg("--restrict", format!("denominator {x} is below 2")));
                    }
                    optimal::best_underapprox_restricted_with(&theta, n, &allowed, &options)?
                }
                None => optimal::best_underapprox_with(&theta, n, &options)?,
            };
            if cli.json {
                out.stdout.push_str(&render_json(&best.to_json(&theta, n)));
            } else {
                out.line(format!("value {}", best.value));
                for w in &best.witnesses {
                    out.line(format!("witness {w}"));
                }
                out.line(format!("greedy {} ({})", best.greedy, best.greedy_value));
                out.line(format!("unique {}", best.unique_best));
                out.line(format!("nodes {}", best.nodes_explored));
            }
        }
        Command::Report { theta, n, search } => {
            let theta = parse_theta("THETA", theta)?;
            let n = parse_count("N", n)?;
            let report = optimal::optimality_report_with(&theta, n, &search.options())?;
            if cli.json {
                out.stdout.push_str(&render_json(&report.to_json()));
            } else {
                out.line(format!("theta {}", report.theta));
                out.line(format!("n {}", report.n));
                out.line(format!(
                    "greedy {} ({})",
                    report.greedy, report.greedy_value
                ));
                out.line(format!("value {}", report.best.value));
                for w in &report.best.witnesses {
                    out.line(format!("witness {w}"));
                }
                out.line(format!("classification {}", report.classification));
                out.line(format!("nodes {}", report.best.nodes_explored));
            }
        }
        Command::TwoTerm { a1 } => {
            let a1 = parse_count("A1", a1)? as u64;
            let records = twoterm::classify_two_term(a1).map_err(|e| bad_arg("A1", e))?;
            if cli.csv {
                out.stdout.push_str(&twoterm::to_csv(&records));
            } else if cli.json {
                out.stdout.push_str(&render_json(&two_term_json(&records)));
            } else {
                render_two_term_text(out, a1, &records);
            }
        }
        Command::Locate { theta } => {
            let theta = parse_theta("THETA", theta)?;
            let (a1, a2) = twoterm::locate(&theta)?;
            let iv = twoterm::harmonic_subinterval(a1.clone(), a2.clone())?;
            if cli.json {
                out.stdout.push_str(&render_json(&json!({
                    "theta": theta.to_string(),
                    "a1": json_int(&a1),
                    "a2": json_int(&a2),
                    "interval": interval_json(&iv),
                })));
            } else {
                out.line(format!("{a1},{a2}"));
                out.line(format!("J({a1},{a2}) = {iv}"));
            }
        }
        Command::VerifyIneq { u, v, direction } => {
            return verify_ineq(cli, out, u, v, *direction);
        }
        Command::EgSplit {
            theta,
            n_max,
            search,
        } => {
            let theta = parse_theta("THETA", theta)?;
            let n_max = parse_count("N_MAX", n_max)?;
            let rows = optimal::eg_split_probe_with(&theta, n_max, &search.options())?;
            if cli.json {
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "n": r.n,
                            "value": r.value.to_string(),
                            "splits": r.checks.iter().map(|c| json!({
                                "n0": c.n0,
                                "head": c.head.to_string(),
                                "tail": c.tail.to_string(),
                                "holds": c.holds,
                                "tail_is_greedy": c.tail_is_greedy,
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                out.stdout.push_str(&render_json(&json!({
                    "theta": theta.to_string(),
                    "rows": rows,
                })));
            } else {
                for r in &rows {
                    out.line(format!("n={} u={}", r.n, r.value));
                    for c in &r.checks {
                        out.line(format!(
                            "  n0={} head={} tail={} split={} tail_greedy={}",
                            c.n0,
                            c.head,
                            c.tail,
                            if c.holds { "holds" } else { "fails" },
                            c.tail_is_greedy
                        ));
                    }
                }
            }
        }
    }
    Ok(0)
}

fn warn_growth(out: &mut Output, n: usize) {
    if n > SYLVESTER_WARN_TERMS {
        let _ = writeln!(
            out.stderr,
            "warning: {n} terms requested; term sizes roughly double in digits per step"
        );
    }
}

fn emit_sequence(cli: &Cli, out: &mut Output, seq: &GreedySequence) {
    if cli.json {
        out.stdout.push_str(&render_json(&sequence_json(seq)));
    } else {
        out.line(seq.to_string());
    }
}

fn two_term_json(records: &[twoterm::TwoTermRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                json!({
                    "a1": r.a1,
                    "x1": r.x1,
                    "x2": r.x2,
                    "a2": r.a2,
                    "relation": r.relation.as_str(),
                    "greedy_valid": r.greedy_valid,
                    "interval": r.improvement_interval.as_ref().map(interval_json),
                })
            })
            .collect(),
    )
}

fn render_two_term_text(out: &mut Output, a1: u64, records: &[twoterm::TwoTermRecord]) {
    out.line(format!("a1 = {a1}: {} competitor pairs", records.len()));
    for (a2, group) in twoterm::group_by_a2(records) {
        let valid = group[0].greedy_valid;
        let header = if valid {
            let j = twoterm::harmonic_subinterval(a1, a2).expect("valid greedy pair");
            format!("a2 = {a2}  J = {j}")
        } else {
            format!("a2 = {a2}  (not a greedy pair)")
        };
        out.line(header);
        for r in group {
            let mut line = format!("  ({}, {}) {}", r.x1, r.x2, r.relation);
            if let Some(iv) = &r.improvement_interval {
                let _ = write!(line, " on {iv}");
            }
            out.line(line);
        }
    }
}

fn verify_ineq(
    cli: &Cli,
    out: &mut Output,
    u: &str,
    v: &str,
    direction: DirectionArg,
) -> Result<u8, Failure> {
    let direction = match direction {
        DirectionArg::Inc => Direction::Increasing,
        DirectionArg::Dec => Direction::Decreasing,
    };
    let u = PositiveSequence::new(parse_rational_list("U", u)?, direction)
        .map_err(|e| bad_arg("U", e))?;
    let v = PositiveSequence::new(parse_rational_list("V", v)?, direction)
        .map_err(|e| bad_arg("V", e))?;
    let (verdict, claim) = match direction {
        Direction::Increasing => (
            ineq::check_reciprocal_inequality(&u, &v)?,
            "sum 1/u < sum 1/v",
        ),
        Direction::Decreasing => (
            ineq::check_sum_inequality_decreasing(&u, &v)?,
            "sum v < sum u",
        ),
    };
    let smoothing = match direction {
        Direction::Decreasing => Some(ineq::smoothing_step(&u, &v)),
        Direction::Increasing => None,
    };
    if cli.json {
        let mut value = json!({
            "u": u.values().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "v": v.values().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "direction": direction.as_str(),
            "claim": claim,
            "smaller": verdict.smaller.to_string(),
            "larger": verdict.larger.to_string(),
            "holds": verdict.holds(),
        });
        if let Some(Ok(Smoothing::Step { pivot, t, sequence })) = &smoothing {
            value["smoothing"] = json!({
                "pivot": pivot,
                "t": t.to_string(),
                "sequence": sequence.values().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            });
        }
        out.stdout.push_str(&render_json(&value));
    } else {
        out.line(format!("u = {u}"));
        out.line(format!("v = {v}"));
        out.line(format!(
            "{claim}: {} < {} {}",
            verdict.smaller,
            verdict.larger,
            if verdict.holds() { "holds" } else { "FAILS" }
        ));
        match &smoothing {
            Some(Ok(Smoothing::Step { pivot, t, sequence })) => {
                out.line(format!(
                    "smoothing: pivot {} t = {t} u' = {sequence}",
                    pivot + 1
                ));
            }
            Some(Ok(Smoothing::Componentwise)) => out.line("smoothing: v < u componentwise"),
            Some(Err(e)) => out.line(format!("smoothing: not applicable ({e})")),
            None => {}
        }
    }
    if verdict.holds() {
        Ok(0)
    } else {
        out.stderr
            .push_str("error: inequality violated; this is a counterexample\n");
        Ok(1)
    }
}
