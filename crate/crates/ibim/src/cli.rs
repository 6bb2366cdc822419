//! Command-line front end: runs studies from config files, regenerates
//! golden references, and prints continued-fraction expansions.
//!
//! Exit codes: 0 success, 2 configuration error (the message names the
//! offending field), 3 numerical failure.

use crate::config::{parse_config, StudyDecl, StudyKind};
use crate::error::{Error, Result};
use crate::experiments::{csv_string, StudySummary};
use crate::numbertheory::continued_fraction;
use crate::reference::{
    builtin_golden_text, compute_goldens, format_goldens, golden_catalog, parse_goldens,
};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "ibim", version, about = "Lattice quadrature studies for implicit boundaries")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the convergence and segment-error studies of a config file.
    Convergence(StudyArgs),
    /// Run the variance studies of a config file.
    Variance(StudyArgs),
    /// List, verify, or regenerate the golden reference integrals.
    Reference(ReferenceArgs),
    /// Print the continued-fraction expansion of a number.
    Cf(CfArgs),
}

#[derive(Debug, Args)]
struct StudyArgs {
    /// TOML config file declaring `[[study]]` tables.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV, summary.json and manifest.json.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Override the seed of every study.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; 0 picks the hardware default. Never changes the
    /// numeric output.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Args)]
struct ReferenceArgs {
    /// Print every (shape, integrand) pair in the catalog.
    #[arg(long)]
    list: bool,
    /// Recompute all golden values and print the golden file to stdout.
    #[arg(long)]
    regenerate: bool,
}

#[derive(Debug, Args)]
struct CfArgs {
    /// The number to expand: a literal, or one of sqrt2, golden, pi.
    value: String,
    /// Number of terms.
    #[arg(long, default_value_t = 20)]
    terms: usize,
}

/// Everything needed to reproduce a run; `timestamp` is the only field
/// that changes between identical reruns.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: String,
    pub out: String,
    pub seed: Option<u64>,
    pub studies: Vec<String>,
    pub tool_version: String,
    pub timestamp: u64,
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidConfig(_) => 2,
                _ => 3,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Convergence(args) => {
            run_studies(&args, &[StudyKind::Convergence, StudyKind::SegmentError])
        }
        Command::Variance(args) => run_studies(&args, &[StudyKind::Variance]),
        Command::Reference(args) => cmd_reference(&args),
        Command::Cf(args) => cmd_cf(&args),
    }
}

fn configure_threads(threads: usize) -> Result<()> {
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidConfig(format!("threads: {e}")))?;
    }
    Ok(())
}

fn run_studies(args: &StudyArgs, kinds: &[StudyKind]) -> Result<()> {
    configure_threads(args.threads)?;
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::InvalidConfig(format!("config: {}: {e}", args.config.display())))?;
    let file = parse_config(&text)?;
    let selected: Vec<&StudyDecl> = file
        .studies
        .iter()
        .filter(|s| kinds.contains(&s.kind))
        .collect();
    if selected.is_empty() {
        return Err(Error::InvalidConfig(format!(
            "config declares no {:?} studies",
            kinds[0]
        )));
    }
    std::fs::create_dir_all(&args.out)
        .map_err(|e| Error::InvalidConfig(format!("out: {}: {e}", args.out.display())))?;

    let mut summaries = Vec::new();
    for decl in &selected {
        let mut decl = (*decl).clone();
        if let Some(seed) = args.seed {
            decl.seed = seed;
        }
        let (cfg, fit) = decl.run()?;
        write_file(&args.out.join(format!("{}.csv", cfg.study_id)), &csv_string(&cfg, &fit))?;
        println!(
            "{}: slope {:.3} over {} points",
            cfg.study_id, fit.slope, fit.n_points
        );
        summaries.push(StudySummary::new(&cfg.study_id, &fit));
    }

    let summary_json = serde_json::to_string_pretty(&summaries).expect("summary serialization");
    write_file(&args.out.join("summary.json"), &summary_json)?;

    let manifest = RunManifest {
        config: args.config.display().to_string(),
        out: args.out.display().to_string(),
        seed: args.seed,
        studies: summaries.iter().map(|s| s.study_id.clone()).collect(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let manifest_json = serde_json::to_string_pretty(&manifest).expect("manifest serialization");
    write_file(&args.out.join("manifest.json"), &manifest_json)?;
    Ok(())
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content)
        .map_err(|e| Error::InvalidConfig(format!("write {}: {e}", path.display())))
}

fn cmd_reference(args: &ReferenceArgs) -> Result<()> {
    if args.list {
        for case in golden_catalog() {
            println!("{} {}", case.shape_id, case.integrand_id);
        }
        return Ok(());
    }
    if args.regenerate {
        let values = compute_goldens()?;
        print!("{}", format_goldens(&values));
        return Ok(());
    }
    // default: verify the committed goldens against a fresh dual-method
    // recomputation
    let committed = parse_goldens(builtin_golden_text())?;
    let recomputed = compute_goldens()?;
    let mut failed = false;
    for (case, v) in &recomputed {
        let c = committed
            .iter()
            .find(|(s, i, _)| s == case.shape_id && i == case.integrand_id)
            .map(|(_, _, v)| *v);
        match c {
            Some(c) if (c - v).abs() <= 1e-10 * v.abs().max(1.0) => {
                println!("ok {} {}", case.shape_id, case.integrand_id);
            }
            Some(c) => {
                println!(
                    "MISMATCH {} {}: committed {c:.14e}, recomputed {v:.14e}",
                    case.shape_id, case.integrand_id
                );
                failed = true;
            }
            None => {
                println!("MISSING {} {}", case.shape_id, case.integrand_id);
                failed = true;
            }
        }
    }
    if failed {
        return Err(Error::ReferenceNoConvergence(0));
    }
    Ok(())
}

fn cmd_cf(args: &CfArgs) -> Result<()> {
    let x = match args.value.as_str() {
        "sqrt2" => std::f64::consts::SQRT_2,
        "golden" => (1.0 + 5.0f64.sqrt()) / 2.0,
        "pi" => std::f64::consts::PI,
        other => other
            .parse::<f64>()
            .map_err(|_| Error::InvalidConfig(format!("value: cannot parse '{other}'")))?,
    };
    if args.terms == 0 {
        return Err(Error::InvalidConfig("terms: must be positive".into()));
    }
    let cf = continued_fraction(x, args.terms);
    let terms: Vec<String> = cf.terms.iter().map(|t| t.to_string()).collect();
    println!("[{}; {}]", terms[0], terms[1..].join(", "));
    for (i, (p, q)) in cf.convergents.iter().enumerate() {
        println!("p_{i}/q_{i} = {p}/{q} = {:.15}", *p as f64 / *q as f64);
    }
    Ok(())
}
