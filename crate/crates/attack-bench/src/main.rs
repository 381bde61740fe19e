use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use attack_bench::attack::{Measure, Strategy};
use attack_bench::runner::{
    parse_gen_spec, ExperimentConfig, FileFormat, NetworkSource, RunError,
};

#[derive(Parser)]
#[command(name = "attack-bench", version, about = "Edge-attack robustness benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment grid and write curve/index CSVs.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Config file with flat `key = value` lines mirroring these flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Network file to attack; repeatable.
    #[arg(long)]
    network: Vec<PathBuf>,
    /// Input format for --network files (default: by file extension).
    #[arg(long)]
    format: Option<FileFormat>,
    /// Generated network spec, `gnm:N:M` or `ba:N:M`; repeatable.
    #[arg(long = "gen", value_parser = parse_gen_spec_arg)]
    generated: Vec<attack_bench::gen::GenSpec>,
    /// Comma-separated subset of rne,ide,ibe.
    #[arg(long, value_delimiter = ',')]
    strategies: Vec<Strategy>,
    /// Performance measure: node or edge.
    #[arg(long)]
    measure: Option<Measure>,
    /// Exponent applied to the endpoint-degree product.
    #[arg(long)]
    varpi: Option<f64>,
    /// Comma-separated index thresholds in (0, 1].
    #[arg(long, value_delimiter = ',')]
    thresholds: Vec<f64>,
    /// Replicates for the random strategy and control generation.
    #[arg(long)]
    replicates: Option<usize>,
    /// Base seed; replicate i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    /// Also run a matched G(n, m) control per network.
    #[arg(long)]
    control: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Subsampling step for extra plotting CSVs (full curves always kept).
    #[arg(long)]
    stride: Option<usize>,
}

fn parse_gen_spec_arg(value: &str) -> Result<attack_bench::gen::GenSpec, String> {
    parse_gen_spec(value)
}

fn build_config(args: RunArgs) -> Result<ExperimentConfig, RunError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
                path: path.clone(),
                source,
            })?;
            ExperimentConfig::from_text(&text)?
        }
        None => ExperimentConfig::default(),
    };
    for path in args.network {
        cfg.networks.push(NetworkSource::File {
            path,
            format: args.format,
        });
    }
    for spec in args.generated {
        cfg.networks.push(NetworkSource::Generated(spec));
    }
    if !args.strategies.is_empty() {
        cfg.strategies = args.strategies;
    }
    if let Some(measure) = args.measure {
        cfg.measure = measure;
    }
    if let Some(varpi) = args.varpi {
        cfg.varpi = varpi;
    }
    if !args.thresholds.is_empty() {
        cfg.thresholds = args.thresholds;
    }
    if let Some(replicates) = args.replicates {
        cfg.replicates = replicates;
    }
    if let Some(seed) = args.seed {
        cfg.base_seed = seed;
    }
    if args.control {
        cfg.control = true;
    }
    if let Some(out) = args.out {
        cfg.out_dir = out;
    }
    if let Some(stride) = args.stride {
        cfg.stride = stride;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run(args) = cli.command;
    let result = build_config(args).and_then(|cfg| {
        let rows = attack_bench::runner::run_experiment(&cfg)?;
        for row in &rows {
            let values: Vec<String> = row.values.iter().map(|v| format!("{v:.4}")).collect();
            println!(
                "{} {} ({} replicates): {}",
                row.network,
                row.strategy,
                row.replicates,
                values.join(" ")
            );
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
