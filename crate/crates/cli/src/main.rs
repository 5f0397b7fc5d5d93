//! `arrowdiag`: evaluate weight systems, run the verification suites, and
//! write value tables.

mod cache;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arrowdiag::diagrams::{enumerate_oriented, parse_diagram, ParsedDiagram, MAX_ENUMERATED_ARROWS};
use arrowdiag::families::{evaluate_weight, Family};
use arrowdiag::oracle::{oracle_eval, MAX_ORACLE_ARROWS};
use arrowdiag::polycount::{fmt_rational, PolynomialQ};
use arrowdiag::relations::{average, casimir_eval, run_suite, Suite, SuiteOptions};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use cache::Cache;

const DEFAULT_ARROW_CAP: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "arrowdiag", version, about = "Classical Lie weight systems on arrow diagrams")]
struct Cli {
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true, env = "ARROWDIAG_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weight of one diagram: a polynomial in N, or a number with --oracle
    Eval {
        #[arg(long)]
        family: Family,
        /// Diagram word, e.g. "t1 t2 h1 h2"; "" is the bare circle
        #[arg(long, allow_hyphen_values = true)]
        diagram: String,
        /// Brute-force matrix value at this N instead of the polynomial
        #[arg(long, value_name = "N")]
        oracle: Option<usize>,
        /// JSON file caching polynomial results
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Largest accepted arrow count (default 4, at most 6)
        #[arg(long)]
        max_arrows: Option<usize>,
    },
    /// Run verification suites and print a JSON report
    Check {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        max_arrows: Option<usize>,
        /// Sizes for numeric checks, e.g. 2..3 (inclusive)
        #[arg(long, value_parser = parse_range)]
        n_range: Option<RangeInclusive<usize>>,
    },
    /// Write a CSV of binomial-basis coefficients for every diagram with n arrows
    Table {
        #[arg(long)]
        max_arrows: usize,
        #[arg(long, value_delimiter = ',', default_value = "gl,so-even,so-odd,sp")]
        families: Vec<Family>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] arrowdiag::diagrams::ParseError),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Eval(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Eval(_) => 1,
            _ => 2,
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("range `{s}` must satisfy 1 <= a <= b"));
    }
    Ok(a..=b)
}

fn arrow_cap(requested: Option<usize>) -> Result<usize, CliError> {
    let cap = requested.unwrap_or(DEFAULT_ARROW_CAP);
    if cap > MAX_ORACLE_ARROWS {
        return Err(CliError::Usage(format!(
            "--max-arrows {cap} exceeds the hard limit of {MAX_ORACLE_ARROWS}"
        )));
    }
    Ok(cap)
}

fn poly_json(p: &PolynomialQ) -> String {
    serde_json::to_string(p).expect("polynomials always serialize")
}

fn run_eval(
    family: Family,
    text: &str,
    oracle: Option<usize>,
    cache_path: Option<PathBuf>,
    max_arrows: Option<usize>,
) -> Result<String, CliError> {
    let cap = arrow_cap(max_arrows)?;
    let parsed = parse_diagram(text)?;
    let n = match &parsed {
        ParsedDiagram::Oriented(d) => d.n(),
        ParsedDiagram::Unoriented(c) => c.n(),
    };
    if n > cap {
        return Err(CliError::Usage(format!(
            "diagram has {n} arrows, above the cap of {cap} (raise with --max-arrows, at most {MAX_ORACLE_ARROWS})"
        )));
    }
    if let Some(size) = oracle {
        let value = match &parsed {
            ParsedDiagram::Oriented(d) => oracle_eval(d, family, size).map_err(|e| CliError::Eval(e.to_string()))?,
            ParsedDiagram::Unoriented(c) => casimir_eval(c, family, size).map_err(|e| CliError::Eval(e.to_string()))?,
        };
        return Ok(serde_json::to_string(&fmt_rational(&value)).expect("strings serialize"));
    }

    let word = match &parsed {
        ParsedDiagram::Oriented(d) => d.canonical().to_string(),
        ParsedDiagram::Unoriented(c) => c.canonical().to_string(),
    };
    let mut cache = cache_path.as_deref().map(Cache::load);
    let key = cache::key(&word, family);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok(poly_json(&hit));
    }
    let value = match &parsed {
        ParsedDiagram::Oriented(d) => evaluate_weight(family, d),
        // chord diagrams take the averaged oriented weight
        ParsedDiagram::Unoriented(c) => average(c).terms.par_iter().map(|o| evaluate_weight(family, o)).sum(),
    };
    if let (Some(c), Some(path)) = (cache.as_mut(), cache_path) {
        c.insert(key, &value);
        c.save().map_err(|source| CliError::Write { path, source })?;
    }
    Ok(poly_json(&value))
}

/// Exit status 0 iff every record passed.
fn run_check(suite: Suite, max_arrows: Option<usize>, n_range: Option<RangeInclusive<usize>>) -> (String, bool) {
    let records = run_suite(suite, &SuiteOptions { max_arrows, n_range });
    let ok = records.iter().all(|r| r.passed());
    (serde_json::to_string_pretty(&records).expect("records serialize"), ok)
}

fn run_table(n: usize, families: &[Family], out: &Path) -> Result<usize, CliError> {
    if n > MAX_ENUMERATED_ARROWS {
        return Err(CliError::Usage(format!(
            "--max-arrows {n} exceeds the table limit of {MAX_ENUMERATED_ARROWS}"
        )));
    }
    let mut families = families.to_vec();
    families.sort_by_key(|f| f.tag());
    families.dedup();
    let diagrams = enumerate_oriented(n).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut rows: Vec<(String, Family)> = diagrams
        .iter()
        .flat_map(|d| families.iter().map(move |&f| (d.to_string(), f)))
        .collect();
    rows.sort_by(|a, b| (&a.0, a.1.tag()).cmp(&(&b.0, b.1.tag())));
    let by_word: std::collections::HashMap<String, _> = diagrams.iter().map(|d| (d.to_string(), d)).collect();
    let values: Vec<String> = rows
        .par_iter()
        .map(|(w, f)| {
            let coeffs = evaluate_weight(*f, by_word[w]).to_binomial();
            if coeffs.is_empty() {
                "0".to_string()
            } else {
                coeffs.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")
            }
        })
        .collect();

    let write_err = |source: std::io::Error| CliError::Write { path: out.to_path_buf(), source };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["word", "family", "binomial_coeffs"]).map_err(|e| write_err(e.into()))?;
    for ((word, f), coeffs) in rows.iter().zip(&values) {
        w.write_record([word.as_str(), f.tag(), coeffs.as_str()]).map_err(|e| write_err(e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| write_err(e.into_error()))?;
    cache::write_atomic(out, &bytes).map_err(write_err)?;
    Ok(rows.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }

    let result = match cli.command {
        Command::Eval { family, diagram, oracle, cache, max_arrows } => {
            run_eval(family, &diagram, oracle, cache, max_arrows).map(|s| (s, true))
        }
        Command::Check { suite, max_arrows, n_range } => Ok(run_check(suite, max_arrows, n_range)),
        Command::Table { max_arrows, families, out } => run_table(max_arrows, &families, &out)
            .map(|rows| (format!("wrote {rows} rows to {}", out.display()), true)),
    };
    match result {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
