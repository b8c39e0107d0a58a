//! The `vertex-verify` command-line interface.
//!
//! Subcommands: `verify` (dual-path sweep), `selfcheck` (property
//! suites), `table` (value tables). A TOML config file mirrors the
//! flags of `verify`/`table`; explicit flags win. Exit codes: 0 all
//! match, 1 mismatch found, 2 configuration/runtime error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use framed_vertex::fermion::SignVariant;

use vertex_verify::config::{parse_framings, Mode, SweepConfig, TableConfig, TableFormat};
use vertex_verify::report::VerifyReport;
use vertex_verify::selfcheck::run_selfcheck;
use vertex_verify::sweep::run_sweep;
use vertex_verify::table::emit_table;

#[derive(Parser)]
#[command(
    name = "vertex-verify",
    version,
    about = "Dual-path verification of the framed topological vertex"
)]
struct Cli {
    /// TOML config file whose keys mirror the flags (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep partition tuples, comparing the bosonic and fermionic sides.
    Verify(VerifyArgs),
    /// Run the built-in property suites.
    Selfcheck(SelfcheckArgs),
    /// Emit a table of framed vertex values.
    Table(TableArgs),
}

#[derive(Args, Default)]
struct VerifyArgs {
    /// Number of legs: 1, 2, or 3.
    #[arg(long)]
    legs: Option<u8>,
    /// Total-size bound for partition tuples.
    #[arg(long = "max-size")]
    max_size: Option<u64>,
    /// Framings as "a1[,a2[,a3]];..." (one group per framing).
    #[arg(long)]
    framings: Option<String>,
    /// exact or sampled.
    #[arg(long)]
    mode: Option<String>,
    /// Random points per record in sampled mode.
    #[arg(long = "sample-points")]
    sample_points: Option<u32>,
    /// Mode cutoff for the direct expansion comparison.
    #[arg(long)]
    cutoff: Option<u32>,
    /// Three-leg determinant sign variant (as-printed,
    /// span-exponent-printed, square-as-cross, span-form).
    #[arg(long = "sign-variant")]
    sign_variant: Option<String>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for sampled-mode evaluation points.
    #[arg(long)]
    seed: Option<u64>,
    /// Report output path (JSON).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelfcheckArgs {
    /// Report output path (JSON).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    legs: Option<u8>,
    #[arg(long = "max-size")]
    max_size: Option<u64>,
    /// One framing as "a1[,a2[,a3]]".
    #[arg(long)]
    framing: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Config-file mirror of the flags. Unknown keys are rejected so typos
/// surface as configuration errors.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    legs: Option<u8>,
    max_size: Option<u64>,
    framings: Option<String>,
    mode: Option<String>,
    sample_points: Option<u32>,
    cutoff: Option<u32>,
    sign_variant: Option<String>,
    jobs: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    framing: Option<String>,
    format: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            toml::from_str::<FileConfig>(&text)
                .map_err(|e| format!("bad config {}: {e}", path.display()))?
        }
        None => FileConfig::default(),
    };

    match cli.command {
        Command::Verify(args) => {
            let cfg = merge_verify(args, file)?;
            let report = run_sweep(&cfg)?;
            print_report("verify", &report);
            Ok(exit_for(&report))
        }
        Command::Selfcheck(args) => {
            let report = run_selfcheck();
            if let Some(path) = args.out.or(file.out) {
                report.write(&path)?;
            }
            print_report("selfcheck", &report);
            for record in &report.records {
                let status = if record.matched { "pass" } else { "FAIL" };
                println!("  {status}  {}", record.bosonic.value);
            }
            Ok(exit_for(&report))
        }
        Command::Table(args) => {
            let cfg = merge_table(args, file)?;
            emit_table(&cfg)?;
            println!("table: wrote {}", cfg.output_path.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_report(name: &str, report: &VerifyReport) {
    println!("{name}: {}", report.summary_line());
    for record in report.records.iter().filter(|r| !r.matched).take(10) {
        println!(
            "  mismatch at partitions {:?}, framing {:?}",
            record.partitions, record.framing
        );
    }
}

fn exit_for(report: &VerifyReport) -> ExitCode {
    if report.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn merge_verify(args: VerifyArgs, file: FileConfig) -> Result<SweepConfig, String> {
    let legs = args
        .legs
        .or(file.legs)
        .ok_or("missing --legs (or 'legs' in the config file)")?;
    let max_size = args
        .max_size
        .or(file.max_size)
        .ok_or("missing --max-size (or 'max_size' in the config file)")?;
    let mut cfg = SweepConfig::new(legs, max_size);
    if let Some(s) = args.framings.or(file.framings) {
        cfg.framings = parse_framings(&s, legs)?;
    }
    if let Some(s) = args.mode.or(file.mode) {
        cfg.mode = Mode::from_str(&s)?;
    }
    if let Some(k) = args.sample_points.or(file.sample_points) {
        cfg.sample_points = k;
    }
    if let Some(c) = args.cutoff.or(file.cutoff) {
        cfg.expansion_cutoff = c;
    }
    if let Some(s) = args.sign_variant.or(file.sign_variant) {
        cfg.sign_variant = SignVariant::from_str(&s)?;
    }
    if let Some(j) = args.jobs.or(file.jobs) {
        cfg.jobs = j;
    }
    if let Some(s) = args.seed.or(file.seed) {
        cfg.seed = s;
    }
    cfg.output_path = args.out.or(file.out);
    Ok(cfg)
}

fn merge_table(args: TableArgs, file: FileConfig) -> Result<TableConfig, String> {
    let legs = args
        .legs
        .or(file.legs)
        .ok_or("missing --legs (or 'legs' in the config file)")?;
    let max_total_size = args
        .max_size
        .or(file.max_size)
        .ok_or("missing --max-size (or 'max_size' in the config file)")?;
    let framing = match args.framing.or(file.framing) {
        Some(s) => {
            let framings = parse_framings(&s, legs)?;
            if framings.len() != 1 {
                return Err("table takes exactly one framing".into());
            }
            framings[0]
        }
        None => framed_vertex::vertex::Framing::zero(),
    };
    let format = match args.format.or(file.format) {
        Some(s) => TableFormat::from_str(&s)?,
        None => TableFormat::Csv,
    };
    let output_path = args
        .out
        .or(file.out)
        .ok_or("missing --out (or 'out' in the config file)")?;
    Ok(TableConfig {
        legs,
        max_total_size,
        framing,
        format,
        output_path,
    })
}
