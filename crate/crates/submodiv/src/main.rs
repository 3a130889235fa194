//! Thin command-line front end over the experiment pipeline.
//!
//! Exit codes: 0 success, 1 input error, 2 usage error, 3 property-check
//! failure.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use submodiv::experiment::{
    run_curvature, run_evaluate, run_factorize, run_ingest, run_oracle_check, run_rerank,
    run_sweep, ExperimentConfig,
};
use submodiv::Error;

#[derive(Parser)]
#[command(name = "submodiv", version, about = "Submodular re-ranking experiments")]
struct Cli {
    /// TOML config file; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

/// One flag per config key.
#[derive(Args)]
struct Overrides {
    #[arg(long, global = true)]
    data_path: Option<String>,
    #[arg(long, global = true)]
    data_format: Option<String>,
    #[arg(long, global = true)]
    data_synthetic_seed: Option<u64>,
    #[arg(long, global = true)]
    data_synthetic_ratings: Option<usize>,
    #[arg(long, global = true)]
    split_fraction: Option<f64>,
    #[arg(long, global = true)]
    split_n_splits: Option<usize>,
    #[arg(long, global = true)]
    split_seed: Option<u64>,
    #[arg(long, global = true)]
    wnmf_rank: Option<usize>,
    #[arg(long, global = true)]
    wnmf_reg: Option<f64>,
    #[arg(long, global = true)]
    wnmf_unobserved_weight: Option<f64>,
    #[arg(long, global = true)]
    wnmf_iters: Option<usize>,
    #[arg(long, global = true)]
    wnmf_seed: Option<u64>,
    #[arg(long, global = true)]
    objective_algorithm: Option<String>,
    #[arg(long, global = true)]
    objective_lambda: Option<f64>,
    /// Comma-separated lambda grid, e.g. `0,0.25,0.5,0.75,1`.
    #[arg(long, global = true)]
    objective_lambda_grid: Option<String>,
    #[arg(long, global = true)]
    objective_groups_per_item: Option<usize>,
    #[arg(long, global = true)]
    rerank_k: Option<usize>,
    /// Comma-separated k grid, e.g. `5,10,20`.
    #[arg(long, global = true)]
    rerank_k_grid: Option<String>,
    #[arg(long, global = true)]
    sweep_users: Option<usize>,
    #[arg(long, global = true)]
    sweep_seed: Option<u64>,
    #[arg(long, global = true)]
    sweep_min_train_ratings: Option<usize>,
    #[arg(long, global = true)]
    output_dir: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, reindex and cache the ratings; print a dataset summary.
    Ingest,
    /// Fit the weighted NMF on the full dataset and persist the factors.
    Factorize,
    /// Re-rank one user's candidates and print the certified top-k list.
    Rerank {
        /// User label (or dense index).
        #[arg(long)]
        user: String,
    },
    /// Tabulate curvature and bound factor over the lambda grid for a user.
    Curvature {
        #[arg(long, default_value = "0")]
        user: String,
    },
    /// Run the split x lambda x k relevance-diversity sweep to CSV.
    Sweep,
    /// Verify the greedy guarantee against the brute-force oracle.
    OracleCheck {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Compute DCG/SS/FD at the configured operating point.
    Evaluate,
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    let o = &cli.overrides;
    macro_rules! set {
        ($field:expr, $value:expr) => {
            if let Some(v) = $value.clone() {
                $field = v;
            }
        };
    }
    set!(cfg.data.path, o.data_path);
    set!(cfg.data.format, o.data_format);
    set!(cfg.data.synthetic_seed, o.data_synthetic_seed);
    set!(cfg.data.synthetic_ratings, o.data_synthetic_ratings);
    set!(cfg.split.fraction, o.split_fraction);
    set!(cfg.split.n_splits, o.split_n_splits);
    set!(cfg.split.seed, o.split_seed);
    set!(cfg.wnmf.rank, o.wnmf_rank);
    set!(cfg.wnmf.reg, o.wnmf_reg);
    set!(cfg.wnmf.unobserved_weight, o.wnmf_unobserved_weight);
    set!(cfg.wnmf.iters, o.wnmf_iters);
    set!(cfg.wnmf.seed, o.wnmf_seed);
    set!(cfg.objective.algorithm, o.objective_algorithm);
    set!(cfg.objective.lambda, o.objective_lambda);
    set!(cfg.objective.groups_per_item, o.objective_groups_per_item);
    set!(cfg.rerank.k, o.rerank_k);
    set!(cfg.sweep.users, o.sweep_users);
    set!(cfg.sweep.seed, o.sweep_seed);
    set!(cfg.sweep.min_train_ratings, o.sweep_min_train_ratings);
    set!(cfg.output.dir, o.output_dir);
    if let Some(grid) = &o.objective_lambda_grid {
        cfg.objective.lambda_grid = parse_grid(grid)?;
    }
    if let Some(grid) = &o.rerank_k_grid {
        cfg.rerank.k_grid = grid
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadParameter(format!("bad k grid entry `{s}`")))
            })
            .collect::<Result<_, _>>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::BadParameter(format!("bad lambda grid entry `{s}`")))
        })
        .collect()
}

/// 1 for bad inputs, 2 for bad usage/parameters, 3 reserved for failed
/// property checks.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BadParameter(_)
        | Error::BudgetTooLarge { .. }
        | Error::TooLarge { .. }
        | Error::FractionOutOfRange(_)
        | Error::OutOfRange(_) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Ingest => {
            let cfg = build_config(cli)?;
            let summary = run_ingest(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
        }
        Command::Factorize => {
            let cfg = build_config(cli)?;
            let summary = run_factorize(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
        }
        Command::Rerank { user } => {
            let cfg = build_config(cli)?;
            let report = run_rerank(&cfg, user)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
        Command::Curvature { user } => {
            let cfg = build_config(cli)?;
            let rows = run_curvature(&cfg, user)?;
            print!("{}", submodiv::curvature::sweep_to_csv(&rows));
            for row in rows.iter().filter(|r| r.error.is_some()) {
                eprintln!(
                    "lambda {:.6} failed: {}",
                    row.lambda,
                    row.error.as_deref().unwrap_or("unknown")
                );
            }
        }
        Command::Sweep => {
            let cfg = build_config(cli)?;
            let report = run_sweep(&cfg)?;
            println!(
                "wrote {} rows to {}/sweep.csv ({} per-user failures)",
                report.rows.len(),
                cfg.output.dir,
                report.failures.len()
            );
        }
        Command::OracleCheck { n, k, trials, seed } => {
            let report = run_oracle_check(*n, *k, *trials, *seed)?;
            for r in &report.results {
                println!(
                    "instance {:3}  alpha {:.6}  bound {:.6}  ratio {:.6}  {}",
                    r.instance,
                    r.alpha,
                    r.bound,
                    r.ratio,
                    if r.ok { "ok" } else { "VIOLATION" }
                );
            }
            println!(
                "{} instances, {} violations, min margin {:.6}",
                report.trials, report.violations, report.min_margin
            );
            if report.violations > 0 {
                return Ok(3);
            }
        }
        Command::Evaluate => {
            let cfg = build_config(cli)?;
            let report = run_evaluate(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
