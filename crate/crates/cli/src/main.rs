mod cache;
mod config;
mod engine;
mod expr;
mod reproduce;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use groot::families::{independence_family_a, independence_family_b};
use groot::instanton::{family_scan, independence_certificate};
use groot::local::{is_two_sphere_identity, vanishing_report};
use groot::monotone::extract_monotone;
use groot::{BrieskornTriple, LocalClass};
use rayon::prelude::*;
use serde_json::json;

use cache::Cache;
use config::{resolve_cache_dir, FileConfig, DEFAULT_SCAN_BUDGET};
use engine::Engine;
use expr::{parse_sum, parse_term};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or arguments; exit 2.
    Usage(String),
    Core(groot::Error),
}

impl From<groot::Error> for CliError {
    fn from(e: groot::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_internal() => 3,
            CliError::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "groot", version, about = "Graded roots, local classes and r0 certificates for Brieskorn spheres")]
struct Cli {
    /// Directory for cached τ extrema (overrides GROOT_CACHE_DIR and the config file)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the cache entirely
    #[arg(long, global = true)]
    no_cache: bool,
    /// JSON config file with optional "cache_dir" and "scan_budget"
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest τ scan, in steps, allowed for a single manifold
    #[arg(long, global = true)]
    scan_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum PaperFamily {
    #[value(name = "paper-A")]
    A,
    #[value(name = "paper-B")]
    B,
}

#[derive(Subcommand)]
enum Command {
    /// Graded root of a sphere, e.g. `3,4,13` or `Y1(2)`
    Root {
        #[arg(allow_hyphen_values = true)]
        manifold: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Local equivalence class of an oriented sphere
    Class {
        #[arg(allow_hyphen_values = true)]
        manifold: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Use the closed-form subroot for family tokens instead of scanning
        #[arg(long)]
        closed_form: bool,
    },
    /// Monotone subroot of a sphere
    Subroot {
        #[arg(allow_hyphen_values = true)]
        manifold: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        closed_form: bool,
    },
    /// Whether a connected sum such as "Y3(2) # -B(8)" has zero class
    Kernel {
        #[arg(allow_hyphen_values = true)]
        expression: String,
        #[arg(long)]
        closed_form: bool,
    },
    /// r0 independence certificate for a family
    Independence {
        #[arg(long, value_enum, conflicts_with = "manifolds")]
        family: Option<PaperFamily>,
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        /// Explicit members instead of a named family
        #[arg(allow_hyphen_values = true)]
        manifolds: Vec<String>,
    },
    /// Number-theoretic checks behind the distinctness of r0 values
    Scan {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
    /// Recompute every published claim and print a comparison table
    ReproducePaper {
        #[arg(long, default_value_t = 8)]
        n_pipeline: u64,
        #[arg(long, default_value_t = 50)]
        n_closed_form: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Output on success plus whether the reported verdict holds.
struct Report {
    text: String,
    verdict: bool,
}

fn ok(text: String) -> Result<Report, CliError> {
    Ok(Report { text, verdict: true })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn only(format: Format, allowed: &[Format], command: &str) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{command} does not support this output format")))
    }
}

fn root_text(t: &BrieskornTriple, r: &groot::GradedRoot) -> String {
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let sigma = r.sigma().map_or("-".to_string(), |s| s.to_string());
    let angles = if r.angles().is_empty() { "-".to_string() } else { join(r.angles()) };
    format!(
        "{}\nsigma   {sigma}\nleaves  {}\nangles  {angles}\nd       {}\n",
        t.unoriented(),
        join(r.leaves()),
        r.d_invariant()
    )
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let file = FileConfig::discover(cli.config.as_deref())?;
    let cache = if cli.no_cache {
        None
    } else {
        resolve_cache_dir(cli.cache_dir, &file).map(Cache::new)
    };
    let budget = cli.scan_budget.or(file.scan_budget).unwrap_or(DEFAULT_SCAN_BUDGET);
    let engine = Engine::new(cache, budget);

    match cli.command {
        Command::Root { manifold, format } => {
            let term = parse_term(&manifold).map_err(CliError::Usage)?;
            let r = engine.root(&term.triple)?;
            ok(match format {
                Format::Json => pretty(&r),
                Format::Text => root_text(&term.triple, &r),
                Format::Dot => r.to_dot(),
            })
        }
        Command::Class { manifold, format, closed_form } => {
            only(format, &[Format::Json, Format::Text], "class")?;
            let term = parse_term(&manifold).map_err(CliError::Usage)?;
            let c = engine.class(&term, closed_form)?;
            ok(match format {
                Format::Text => format!("{c}\n"),
                _ => pretty(&c),
            })
        }
        Command::Subroot { manifold, format, closed_form } => {
            only(format, &[Format::Json, Format::Text], "subroot")?;
            let term = parse_term(&manifold).map_err(CliError::Usage)?;
            let m = match term.family {
                Some((family, n)) if closed_form => family.closed_form_subroot(n)?,
                _ => extract_monotone(&engine.root(&term.triple)?)?,
            };
            ok(match format {
                Format::Text => format!("{m}\n"),
                _ => pretty(&m),
            })
        }
        Command::Kernel { expression, closed_form } => {
            let summands = parse_sum(&expression).map_err(CliError::Usage)?;
            let mut distinct = BTreeMap::new();
            for s in &summands {
                distinct.entry(s.term.triple.key()).or_insert(s.term);
            }
            if !closed_form {
                for term in distinct.values() {
                    engine.check_budget(&term.triple)?;
                }
            }
            let classes: BTreeMap<String, LocalClass> = distinct
                .par_iter()
                .map(|(k, term)| Ok((k.clone(), engine.class(term, closed_form)?)))
                .collect::<Result<_, CliError>>()?;
            let mut total = LocalClass::zero();
            for s in &summands {
                total += &classes[&s.term.triple.key()].scaled(s.multiplicity);
            }
            let pairs: Vec<(BrieskornTriple, i64)> =
                summands.iter().map(|s| (s.term.triple, s.multiplicity)).collect();
            let in_kernel = total.is_zero();
            let out = json!({
                "expression": expression,
                "summands": summands.iter().map(|s| json!({
                    "triple": s.term.triple,
                    "multiplicity": s.multiplicity,
                    "class": classes[&s.term.triple.key()],
                })).collect::<Vec<_>>(),
                "class": total,
                "classText": total.to_string(),
                "inKernel": in_kernel,
                "vanishing": vanishing_report(&total, is_two_sphere_identity(&pairs)),
            });
            Ok(Report {
                text: pretty(&out),
                verdict: in_kernel,
            })
        }
        Command::Independence { family, n_max, manifolds } => {
            let members: Vec<BrieskornTriple> = match family {
                Some(PaperFamily::A) => independence_family_a(n_max)?,
                Some(PaperFamily::B) => independence_family_b(n_max)?,
                None if manifolds.is_empty() => {
                    return Err(CliError::Usage("give --family or a list of manifolds".into()))
                }
                None => manifolds
                    .iter()
                    .map(|m| parse_term(m).map(|t| t.triple))
                    .collect::<Result<_, _>>()
                    .map_err(CliError::Usage)?,
            };
            let cert = independence_certificate(&members)?;
            Ok(Report {
                text: pretty(&cert),
                verdict: cert.verdict,
            })
        }
        Command::Scan { n_max } => match family_scan(n_max) {
            Ok(report) => ok(pretty(&report)),
            Err(e @ groot::Error::CounterexampleFound { .. }) => Ok(Report {
                text: pretty(&json!({ "nMax": n_max, "counterexample": e.to_string() })),
                verdict: false,
            }),
            Err(e) => Err(e.into()),
        },
        Command::ReproducePaper { n_pipeline, n_closed_form, format } => {
            only(format, &[Format::Json, Format::Text], "reproduce-paper")?;
            let rows = reproduce::run(&engine, n_pipeline, n_closed_form)?;
            let verdict = rows.iter().all(|r| r.pass);
            let text = match format {
                Format::Text => reproduce::render(&rows),
                _ => pretty(&rows),
            };
            Ok(Report { text, verdict })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            if !report.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(if report.verdict { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
