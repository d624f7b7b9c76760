//! `trijac`: polynomials, Gram matrices and verification reports.

mod config;
mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use tri_jacobi::exact::{display_grouped, Var};
use tri_jacobi::jacobi2::{bi_jacobi, gram_matrix};
use tri_jacobi::relations::{Catalogue, DEFAULT_CATALOGUE};

use config::{parse_mode, parse_rep, parse_suites, RunConfig, CATALOGUE_ENV};
use output::{write_atomic, Document};

#[derive(Parser)]
#[command(name = "trijac", version = output::VERSION, about = "Exact checks for Jacobi polynomials on the triangle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print J_{n,k} with symbolic parameters.
    Poly {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Print the Gram matrix of all J_{n,k} with n <= NMAX as JSON.
    Gram {
        #[arg(allow_negative_numbers = true)]
        nmax: i64,
    },
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Largest total degree for index-range checks.
    #[arg(long, allow_negative_numbers = true)]
    nmax: Option<i64>,
    /// symbolic or sampled.
    #[arg(long)]
    mode: Option<String>,
    /// Minimum accepted samples per sampled check.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// variable, degree or both.
    #[arg(long)]
    rep: Option<String>,
    /// Comma-separated suites, or `all`; may be repeated.
    #[arg(long)]
    suite: Vec<String>,
    /// Report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relation catalogue; defaults to $TRIJAC_CATALOGUE, then the bundled one.
    #[arg(long)]
    catalogue: Option<PathBuf>,
    /// key = value configuration file, overridden by flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Record wall-clock times in the report.
    #[arg(long)]
    timings: bool,
    /// Worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

/// A usage or I/O problem, as opposed to a failed check.
struct UsageError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> UsageError {
        UsageError(e.into())
    }
}

fn poly(n: i64, k: i64) -> Result<()> {
    if n < 0 || k < 0 || k > n {
        bail!("indices must satisfy 0 <= k <= n, got n={n}, k={k}");
    }
    println!("{}", display_grouped(&bi_jacobi(n, k).poly, &[Var::X, Var::Y]));
    Ok(())
}

fn gram(nmax: i64) -> Result<()> {
    if nmax < 0 {
        bail!("nmax must be non-negative, got {nmax}");
    }
    let m = gram_matrix(nmax).map_err(anyhow::Error::msg)?;
    let rows: Vec<Vec<String>> = m
        .iter()
        .map(|row| row.iter().map(|e| e.reduce().to_string()).collect())
        .collect();
    println!("{}", serde_json::to_string(&rows)?);
    Ok(())
}

fn build_config(args: &VerifyArgs) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config {
        cfg.load_file(path)?;
    }
    if let Some(n) = args.nmax {
        cfg.n_max = n;
    }
    if let Some(m) = &args.mode {
        cfg.mode = parse_mode(m)?;
    }
    if let Some(s) = args.samples {
        cfg.samples = s;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(r) = &args.rep {
        cfg.representation = parse_rep(r)?;
    }
    if !args.suite.is_empty() {
        cfg.suites = parse_suites(&args.suite.join(","))?;
    }
    if let Some(o) = &args.out {
        cfg.output = Some(o.clone());
    }
    if let Some(c) = &args.catalogue {
        cfg.catalogue = Some(c.clone());
    }
    if cfg.catalogue.is_none() {
        cfg.catalogue = std::env::var_os(CATALOGUE_ENV).map(PathBuf::from);
    }
    cfg.timings |= args.timings;
    cfg.validate()?;
    cfg.suites = cfg.selected_suites();
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> std::result::Result<bool, UsageError> {
    let cfg = build_config(args)?;
    if let Some(t) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("starting worker pool")?;
    }
    let (label, text) = match &cfg.catalogue {
        Some(p) => (
            p.display().to_string(),
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        ),
        None => ("bundled".to_string(), DEFAULT_CATALOGUE.to_string()),
    };
    let cat = Catalogue::parse(&text).with_context(|| format!("catalogue {label}"))?;
    let reports = suites::run_all(&cfg, &cat);
    for r in &reports {
        println!("{r}");
    }
    let doc = Document::new(&cfg, label, &text, &reports);
    println!(
        "{} checks: {} passed, {} failed",
        doc.summary.total, doc.summary.passed, doc.summary.failed
    );
    if let Some(out) = &cfg.output {
        let mut json = serde_json::to_string_pretty(&doc)?;
        json.push('\n');
        write_atomic(out, json.as_bytes())?;
    }
    Ok(doc.summary.failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Poly { n, k } => poly(*n, *k).map(|_| true).map_err(UsageError),
        Command::Gram { nmax } => gram(*nmax).map(|_| true).map_err(UsageError),
        Command::Verify(args) => verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("trijac: {e:#}");
            ExitCode::from(2)
        }
    }
}
