use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mixsched::experiment::{
    self, AggregateMetrics, DistributionKind, ExperimentConfig, GridCellResult, ReplicationResult,
};
use mixsched::{engine, traffic, MetricsReport, PolicyKind, Result, Slack};

#[derive(Debug, Parser)]
#[command(name = "mixsched", version, about = "Single-link scheduling simulator for deadline and regular flows")]
struct Cli {
    /// Print per-replication rows to stderr.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one policy on one traffic configuration.
    Simulate(SimulateArgs),
    /// Run a full experiment grid described by a JSON config.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    policy: PolicyKind,
    /// Flow arrival rate.
    #[arg(long, default_value_t = 0.1)]
    lambda: f64,
    #[arg(long, default_value = "exp")]
    dist: DistributionKind,
    #[arg(long, default_value_t = 0.5)]
    regular_fraction: f64,
    #[arg(long, default_value_t = 10_000)]
    flows: usize,
    /// Slot length.
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Replications, seeded `seed`, `seed + 1`, ...
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 1.0)]
    capacity: f64,
    #[arg(long, default_value_t = 1.0)]
    slack_low: f64,
    #[arg(long, default_value_t = 4.0)]
    slack_high: f64,
    /// Simulate this workload file instead of generating one.
    #[arg(long)]
    workload: Option<PathBuf>,
    /// Write the (first) workload in text form.
    #[arg(long)]
    dump_workload: Option<PathBuf>,
    /// Write per-flow completions of the first replication.
    #[arg(long)]
    dump_completions: Option<PathBuf>,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Directory receiving one `<dist>_<rate>.csv` per distribution and rate.
    #[arg(long)]
    out: PathBuf,
}

fn simulate(args: &SimulateArgs, verbose: bool) -> Result<()> {
    let cfg = ExperimentConfig {
        policies: vec![args.policy],
        regular_fractions: vec![args.regular_fraction],
        distributions: vec![args.dist],
        arrival_rates: vec![args.lambda],
        flow_count: args.flows,
        repetitions: args.reps,
        base_seed: args.seed,
        delta: args.delta,
        capacity: args.capacity,
        slack: Slack {
            low: args.slack_low,
            high: args.slack_high,
        },
        ..ExperimentConfig::default()
    };
    cfg.validate()?;
    let loaded = match &args.workload {
        Some(path) => Some(traffic::read_workload(BufReader::new(File::open(path)?))?),
        None => None,
    };
    let sim = cfg.sim_config(args.policy);
    let mut replications = Vec::with_capacity(cfg.repetitions);
    for rep in 0..cfg.repetitions {
        let wcfg = cfg.workload_config(args.dist, args.lambda, args.regular_fraction, rep);
        let flows = match &loaded {
            Some(flows) => flows.clone(),
            None => traffic::generate_workload(&wcfg)?,
        };
        let records = engine::run(&flows, &sim)?;
        if rep == 0 {
            if let Some(path) = &args.dump_workload {
                traffic::write_workload(&flows, BufWriter::new(File::create(path)?))?;
            }
            if let Some(path) = &args.dump_completions {
                engine::write_completions(&records, BufWriter::new(File::create(path)?))?;
            }
        }
        replications.push(ReplicationResult {
            replication: rep,
            seed: wcfg.seed,
            workload_hash: experiment::workload_hash(&flows),
            metrics: MetricsReport::from_records(&records, cfg.tail_percentile),
        });
    }
    let cell = GridCellResult {
        policy: args.policy,
        distribution: args.dist,
        arrival_rate: args.lambda,
        regular_fraction: args.regular_fraction,
        mean: AggregateMetrics::mean_of(replications.iter().map(|r| &r.metrics)),
        replications,
    };
    let cells = [cell];
    if verbose {
        eprint!("{}", experiment::emit_replication_csv(&cells));
    }
    let csv = experiment::emit_csv(&cells);
    match &args.out {
        Some(path) => fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn sweep(args: &SweepArgs, verbose: bool) -> Result<()> {
    let cfg = ExperimentConfig::from_json(&fs::read_to_string(&args.config)?)?;
    let results = experiment::run_experiment(&cfg)?;
    if verbose {
        eprint!("{}", experiment::emit_replication_csv(&results));
    }
    for path in experiment::write_outputs(&results, &args.out)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(args) => simulate(args, cli.verbose),
        Command::Sweep(args) => sweep(args, cli.verbose),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
