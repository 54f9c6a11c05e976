use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use beamsched::harness::{run_experiment, ExperimentSpec};
use beamsched::schedulers::DEFAULT_EXHAUSTIVE_BUDGET;
use beamsched::{Parallelism, SchedulerKind, SystemConfig};
use clap::{Args, Parser, Subcommand};

/// Beam-sequence scheduling simulator for coexisting mmWave access points.
#[derive(Parser)]
#[command(name = "beamsched", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo experiment.
    Run(RunArgs),
    /// Print the per-AP sequence count M! and the joint search size (M!)^N.
    Enumerate(ConfigArg),
    /// Check a configuration file without running anything.
    Validate(ConfigArg),
}

#[derive(Args)]
struct ConfigArg {
    /// TOML file; omitted keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Base seed; defaults to the config's rng_seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated subset of random,exhaustive,greedy,learning.
    /// Defaults to every scheduler that fits the exhaustive budget.
    #[arg(long, value_delimiter = ',')]
    schedulers: Option<Vec<SchedulerKind>>,
    /// Directory for result files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest (M!)^N exhaustive search will accept.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BUDGET)]
    exhaustive_budget: u128,
    /// Run trials and exhaustive search on one thread.
    #[arg(long)]
    sequential: bool,
}

fn load_config(path: Option<&Path>) -> Result<SystemConfig> {
    let config = match path {
        Some(p) => SystemConfig::load(p).with_context(|| format!("reading {}", p.display()))?,
        None => SystemConfig::default(),
    };
    config.validate().context("invalid configuration")?;
    Ok(config)
}

fn run(args: RunArgs) -> Result<()> {
    let config = load_config(args.config.config.as_deref())?;
    let mut spec = ExperimentSpec::new(config, args.trials);
    spec.exhaustive_budget = args.exhaustive_budget;
    if let Some(seed) = args.seed {
        spec = spec.with_seed(seed);
    }
    if args.sequential {
        spec = spec.with_parallelism(Parallelism::Sequential);
    }
    match args.schedulers {
        Some(list) => spec = spec.with_schedulers(&list),
        None if !spec.exhaustive_fits() => {
            eprintln!(
                "note: skipping exhaustive search, (M!)^N = {} exceeds budget {}",
                spec.config.joint_schedule_count(),
                spec.exhaustive_budget
            );
            let rest: Vec<_> = SchedulerKind::ALL
                .into_iter()
                .filter(|&k| k != SchedulerKind::Exhaustive)
                .collect();
            spec = spec.with_schedulers(&rest);
        }
        None => {}
    }
    spec.output_dir = args.out.clone();

    let results = run_experiment(&spec)?;
    println!(
        "{:<11} {:>8} {:>10} {:>10} {:>10} {:>10} {:>14}",
        "scheduler", "trials", "mean", "std", "min", "max", "evaluations"
    );
    for &kind in &results.schedulers {
        let s = results.summary(kind).expect("scheduler was run");
        println!(
            "{:<11} {:>8} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>14}",
            kind.name(),
            s.trials,
            s.mean,
            s.variance.sqrt(),
            s.min,
            s.max,
            s.total_evaluations
        );
    }
    if let Some(dir) = &args.out {
        println!("results written to {}", dir.display());
    }
    Ok(())
}

fn enumerate(arg: ConfigArg) -> Result<()> {
    let config = load_config(arg.config.as_deref())?;
    let joint = config.joint_schedule_count();
    println!("sequences_per_ap {}", config.sequences_per_ap());
    println!("joint_schedules {joint}");
    if joint > DEFAULT_EXHAUSTIVE_BUDGET {
        println!("exhaustive refused under the default budget of {DEFAULT_EXHAUSTIVE_BUDGET}");
    }
    Ok(())
}

fn validate(arg: ConfigArg) -> Result<()> {
    let Some(path) = arg.config else {
        bail!("validate needs --config <path>");
    };
    load_config(Some(&path))?;
    println!("{}: ok", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Validate(a) => validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
