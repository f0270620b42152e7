//! `dvpack` command-line interface.
//!
//! Exit codes: 0 success, 1 validation failure, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use dvpack::format::{load_solution, save_solution, to_pretty, ComparisonDoc};
use dvpack::instances::load_config;
use dvpack::{
    catalog_instance, compare_compression, load_instance, pack_bin, random_instance, save_instance,
    validate_prefixes, validate_solution_with_tolerance, GeneratorConfig, Instance,
};

/// Coordinates in files are rounded to 6 decimals.
const FILE_TOLERANCE: f64 = 1e-5;

#[derive(Parser)]
#[command(name = "dvpack", version, about = "Compression-aware 3D bin packing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pack one bin and write the step-ordered solution.
    Pack(PackArgs),
    /// Pack every bin with and without compression and write a report.
    Compare(CompareArgs),
    /// Check a solution file against all packing constraints.
    Validate(ValidateArgs),
    /// Write a random instance.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    /// The fresh-produce catalog (4 bins, 215 items).
    Catalog,
    /// A random instance from the default generator config (uses --seed).
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Instance file.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Built-in instance.
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
}

#[derive(Args)]
struct PackArgs {
    #[command(flatten)]
    source: Source,
    /// Bin name, e.g. `small` or "Small bin".
    #[arg(long)]
    bin: String,
    #[arg(long, value_enum, default_value = "on")]
    compression: Toggle,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    solution: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator config (JSON); defaults apply to omitted fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Pack(args) => pack(args),
        Command::Compare(args) => compare(args),
        Command::Validate(args) => validate(args),
        Command::Generate(args) => generate(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn resolve(source: &Source, seed: u64) -> Result<Instance> {
    match (&source.instance, source.builtin) {
        (Some(path), _) => {
            load_instance(path).with_context(|| format!("reading {}", path.display()))
        }
        (None, Some(Builtin::Catalog)) => Ok(catalog_instance()),
        (None, Some(Builtin::Random)) => Ok(random_instance(&GeneratorConfig::default(), seed)?),
        (None, None) => bail!("one of --instance or --builtin is required"),
    }
}

fn pack(args: PackArgs) -> Result<ExitCode> {
    let instance = resolve(&args.source, args.seed)?;
    let bin = instance.bin(&args.bin).ok_or_else(|| {
        anyhow!(
            "unknown bin '{}'; valid bins: {}",
            args.bin,
            instance.bin_names().join(", ")
        )
    })?;
    let solution = pack_bin(&instance.items, bin, args.compression == Toggle::On);
    save_solution(&solution, &args.output)
        .with_context(|| format!("writing {}", args.output.display()))?;
    let m = &solution.metrics;
    println!(
        "{}: packed {} of {} items, initial volume {:.2}, true volume {:.2}, utilization {:.4}, weight {:.2} kg",
        bin.name,
        m.item_count,
        instance.items.len(),
        m.initial_volume,
        m.true_volume,
        m.utilization,
        m.total_weight
    );
    Ok(ExitCode::SUCCESS)
}

fn compare(args: CompareArgs) -> Result<ExitCode> {
    let instance = resolve(&args.source, args.seed)?;
    let comparison = compare_compression(&instance.items, &instance.bins);
    let doc = ComparisonDoc::from_comparison(&instance.label, &comparison);
    std::fs::write(&args.output, to_pretty(&doc))
        .with_context(|| format!("writing {}", args.output.display()))?;
    for line in &doc.summary {
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn validate(args: ValidateArgs) -> Result<ExitCode> {
    let solution = load_solution(&args.solution)
        .with_context(|| format!("reading {}", args.solution.display()))?;
    let violations = validate_solution_with_tolerance(&solution, FILE_TOLERANCE);
    if !violations.is_empty() {
        for v in &violations {
            println!("{v}");
        }
        return Ok(ExitCode::from(1));
    }
    if let Err((k, violations)) = validate_prefixes(&solution, FILE_TOLERANCE) {
        for v in &violations {
            println!("after step {k}: {v}");
        }
        return Ok(ExitCode::from(1));
    }
    println!("ok: {} steps, no violations", solution.steps.len());
    Ok(ExitCode::SUCCESS)
}

fn generate(args: GenerateArgs) -> Result<ExitCode> {
    let config = match &args.config {
        Some(path) => load_config(path).with_context(|| format!("reading {}", path.display()))?,
        None => GeneratorConfig::default(),
    };
    let instance = random_instance(&config, args.seed)?;
    save_instance(&instance, &args.output)
        .with_context(|| format!("writing {}", args.output.display()))?;
    println!(
        "wrote {} items, {} bins to {}",
        instance.items.len(),
        instance.bins.len(),
        args.output.display()
    );
    Ok(ExitCode::SUCCESS)
}
