//! `ringlab` command line.
//!
//! Exit codes: 0 verified / completed, 2 malformed input, 3 premise failed,
//! 4 budget exceeded (report flagged partial), 5 implementation bug.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    self, AnalysisError, Branch, Budgets, Mode, MultiAdditiveMap, Outcome, Statement, VerificationReport,
    DEFAULT_SAMPLE_COUNT, DEFAULT_TUPLE_BUDGET,
};
use crate::catalog::Catalog;
use crate::maps::{map_from_generator_images, DEFAULT_ENUM_BUDGET};
use crate::ring::{Elem, FiniteRing, DEFAULT_CARRIER_CAP, MAX_DEGREE};
use crate::search::{self, Format, Profile, SearchTask, TextReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PREMISE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_BUG: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "ringlab", version, about = "Finite-ring laboratory for n-Jordan homomorphisms")]
pub struct Cli {
    /// Ring catalog (JSON); the bundled standard catalog when absent.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Report file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// json | text
    #[arg(long, global = true, default_value = "json")]
    pub format: Format,
    /// Seed for sampled mode.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub tuple_budget: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub enum_budget: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_CARRIER_CAP)]
    pub carrier_cap: usize,
    /// Degrees, comma separated.
    #[arg(long = "n", global = true, value_delimiter = ',')]
    pub degrees: Vec<usize>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Record wall time in verification reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect catalog rings.
    Ring {
        #[command(subcommand)]
        cmd: RingCommand,
    },
    /// Verify one statement on a ring pair.
    Verify {
        /// lemma21 | lemma22 | thm23 | thm24 | cor25
        statement: Statement,
        /// Domain ring label.
        a: String,
        /// Codomain ring label.
        b: String,
        /// Degree (alternative to --n).
        n: Option<usize>,
        /// Map as comma-separated generator images; all n-Jordan maps when absent.
        #[arg(long)]
        map: Option<String>,
        /// hom | anti (cor25 only)
        #[arg(long, default_value = "hom")]
        branch: Branch,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Tuples drawn in sampled mode.
        #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
        samples: u64,
    },
    /// Count map classes for ring pairs.
    Classify {
        /// Pairs as A:B, comma separated; all ordered catalog pairs when absent.
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
    },
    /// Verify statements and hunt counterexamples over ring pairs.
    Search {
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
        /// char_violated | no_unit | noncommutative
        #[arg(long, value_delimiter = ',')]
        profile: Vec<Profile>,
        #[arg(long, value_delimiter = ',')]
        statements: Vec<Statement>,
        /// Keep at most this many counterexamples.
        #[arg(long)]
        max_findings: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RingCommand {
    Show { label: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

/// A failure that ends the run with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    ExitCode::from(run(&cli))
}

/// Runs a parsed command line and returns its exit code.
pub fn run(cli: &Cli) -> u8 {
    let result = match cli.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(UsageError::from)
            .and_then(|pool| pool.install(|| dispatch(cli))),
        None => dispatch(cli),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8, UsageError> {
    if let Some(&n) = cli.degrees.iter().find(|&&n| !(2..=MAX_DEGREE).contains(&n)) {
        return Err(UsageError(format!("degree {n} outside 2..={MAX_DEGREE}")));
    }
    let catalog = match &cli.catalog {
        Some(path) => Catalog::from_path(path, cli.carrier_cap)?,
        None => Catalog::standard(),
    };
    let budgets = Budgets {
        tuple: cli.tuple_budget,
        enumeration: cli.enum_budget,
    };
    match &cli.command {
        Command::Ring {
            cmd: RingCommand::Show { label },
        } => {
            let ring = catalog.get(label)?;
            let text = match cli.format {
                Format::Text => ring_summary(ring) + "\n",
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&RingInfo::new(ring))?;
                    s.push('\n');
                    s
                }
            };
            write_output(cli, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            statement,
            a,
            b,
            n,
            map,
            branch,
            mode,
            samples,
        } => {
            let n = match (n, cli.degrees.as_slice()) {
                (Some(n), []) => *n,
                (None, [n]) => *n,
                (Some(p), [f]) if p == f => *p,
                _ => return Err(UsageError("verify needs exactly one degree".into())),
            };
            if !(2..=MAX_DEGREE).contains(&n) {
                return Err(UsageError(format!("degree {n} outside 2..={MAX_DEGREE}")));
            }
            let (ra, rb) = (catalog.get(a)?.clone(), catalog.get(b)?.clone());
            let mode = match mode {
                ModeArg::Exhaustive => Mode::Exhaustive,
                ModeArg::Sampled => Mode::Sampled {
                    count: *samples,
                    seed: cli.seed,
                },
            };
            let map = map
                .as_deref()
                .map(|key| -> Result<_, UsageError> {
                    let images = parse_key(key)?;
                    Ok(map_from_generator_images(&ra, &rb, &images)?)
                })
                .transpose()?;
            if map.is_some() && matches!(statement, Statement::Thm23 | Statement::Cor25) {
                return Err(UsageError(format!("{statement} quantifies over all maps; drop --map")));
            }
            let rings = [a.clone(), b.clone()];
            let work = || -> Result<VerificationReport, AnalysisError> {
                match (statement, &map) {
                    (Statement::Lemma21, Some(h)) => {
                        let f = MultiAdditiveMap::Defect { h: h.clone(), n };
                        match analysis::check_lemma21(&f, mode, &budgets) {
                            Err(AnalysisError::HypothesisFailed { x }) => {
                                let mut r = analysis::verify_lemma22(h, n, mode, &budgets)?;
                                r.statement = Statement::Lemma21;
                                r.detail = Some(format!("diagonal hypothesis fails at x = {x}"));
                                Ok(r)
                            }
                            other => other,
                        }
                    }
                    (Statement::Lemma22, Some(h)) => analysis::verify_lemma22(h, n, mode, &budgets),
                    (Statement::Lemma21 | Statement::Lemma22, None) => {
                        let mut r = analysis::verify_lemma22_all(&ra, &rb, n, mode, &budgets)?;
                        r.statement = *statement;
                        Ok(r)
                    }
                    (Statement::Thm23, None) => analysis::verify_theorem23(&ra, &rb, n, &budgets),
                    (Statement::Thm24, Some(h)) => analysis::verify_theorem24_map(h, n),
                    (Statement::Thm24, None) => analysis::verify_theorem24(&ra, &rb, n, &budgets),
                    (Statement::Cor25, None) => analysis::verify_corollary25(&ra, &rb, n, *branch, &budgets),
                    (Statement::Thm23 | Statement::Cor25, Some(_)) => unreachable!("rejected above"),
                }
            };
            let result = if cli.timing { analysis::timed(work) } else { work() };
            let report = match result {
                Ok(r) => r,
                Err(e) if e.is_budget() => VerificationReport::budget_exceeded(*statement, rings, n, mode, &e),
                Err(e) => return Err(UsageError(e.to_string())),
            };
            write_report(cli, &report)?;
            Ok(match report.outcome {
                Outcome::Verified => EXIT_OK,
                Outcome::PremiseFailed => EXIT_PREMISE,
                Outcome::BudgetExceeded => EXIT_BUDGET,
                Outcome::Refuted => EXIT_BUG,
            })
        }
        Command::Classify { pairs } => {
            let pairs = parse_pairs(&catalog, pairs)?;
            let degrees = default_degrees(&cli.degrees);
            let table = search::run_classification(&catalog, &pairs, &degrees, &budgets, cli.seed)?;
            write_report(cli, &table)?;
            Ok(if table.run.partial { EXIT_BUDGET } else { EXIT_OK })
        }
        Command::Search {
            pairs,
            profile,
            statements,
            max_findings,
        } => {
            let pairs = parse_pairs(&catalog, pairs)?;
            let degrees = default_degrees(&cli.degrees);
            let task = SearchTask {
                pairs,
                n_range: (
                    *degrees.iter().min().unwrap_or(&2),
                    *degrees.iter().max().unwrap_or(&2),
                ),
                statements: statements.clone(),
                profiles: profile.clone(),
                budgets,
                max_findings: max_findings.unwrap_or(usize::MAX),
            };
            let report = search::run_task(&catalog, &task, cli.seed)?;
            if report
                .findings
                .iter()
                .any(|f| f.kind == search::FindingKind::ImplementationBug)
            {
                write_report(cli, &report)?;
                return Ok(EXIT_BUG);
            }
            write_report(cli, &report)?;
            Ok(if report.run.partial { EXIT_BUDGET } else { EXIT_OK })
        }
    }
}

fn default_degrees(given: &[usize]) -> Vec<usize> {
    if given.is_empty() {
        vec![2, 3, 4]
    } else {
        given.to_vec()
    }
}

fn parse_key(key: &str) -> Result<Vec<Elem>, UsageError> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|s| s.trim().parse::<Elem>().map_err(|e| UsageError(format!("bad map key `{key}`: {e}"))))
        .collect()
}

fn parse_pairs(catalog: &Catalog, pairs: &[String]) -> Result<Vec<(String, String)>, UsageError> {
    if pairs.is_empty() {
        return Ok(catalog.all_pairs());
    }
    pairs
        .iter()
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| UsageError(format!("pair `{p}` is not of the form A:B")))?;
            catalog.get(a)?;
            catalog.get(b)?;
            Ok((a.to_string(), b.to_string()))
        })
        .collect()
}

fn write_output(cli: &Cli, text: &str) -> Result<(), UsageError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_report<T: Serialize + TextReport>(cli: &Cli, report: &T) -> Result<(), UsageError> {
    write_output(cli, &search::render(report, cli.format))
}

#[derive(Serialize)]
struct RingInfo<'a> {
    label: &'a str,
    size: usize,
    unit: Option<Elem>,
    commutative: bool,
    basis: &'a crate::ring::AdditiveBasis,
    char_exceeds: BTreeMap<usize, bool>,
}

impl<'a> RingInfo<'a> {
    fn new(ring: &'a Arc<FiniteRing>) -> Self {
        RingInfo {
            label: ring.label(),
            size: ring.size(),
            unit: ring.unit(),
            commutative: ring.is_commutative(),
            basis: ring.basis(),
            char_exceeds: (2..=7).map(|n| (n, ring.char_exceeds(n))).collect(),
        }
    }
}

/// One-line description: size, unit, commutativity, basis and the
/// characteristic status for `n = 2..=7`.
pub fn ring_summary(ring: &FiniteRing) -> String {
    let ok: Vec<usize> = (2..=7).filter(|&n| ring.char_exceeds(n)).collect();
    let first_fail = (2..=7).find(|&n| !ring.char_exceeds(n));
    let chars = match (ok.last(), first_fail) {
        (None, _) => "char>n fails for all n>=2".to_string(),
        (Some(last), None) => format!("char>n for n=2..{last}"),
        (Some(last), Some(f)) => format!("char>n for n=2..{last}, fails at n={f}"),
    };
    format!(
        "{} size={} {} {} basis={} {}",
        ring.label(),
        ring.size(),
        if ring.unit().is_some() { "unital" } else { "nonunital" },
        if ring.is_commutative() { "commutative" } else { "noncommutative" },
        ring.basis(),
        chars
    )
}
