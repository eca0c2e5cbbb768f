use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mfsurrogate::config::{Command, RunConfig};
use mfsurrogate::{Error, Result};

#[derive(Parser)]
#[command(name = "mfsurrogate", version, about = "Multifidelity surrogate experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write benchmark datasets, one CSV per fidelity level
    Generate(Opts),
    /// Grid-search one tuning stage of a method
    Tune(Opts),
    /// Cost-matched comparison of methods across budgets
    CostStudy(Opts),
    /// Score a fitted model or a predictions file on a test file
    Eval(Opts),
    /// Rebuild the markdown report and charts from results ledgers
    Report(Opts),
}

/// List values are comma separated, as in the config file.
#[derive(Args)]
struct Opts {
    /// Start from a saved run configuration; flags override its keys
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    benchmark: Option<String>,
    #[arg(long)]
    dim: Option<String>,
    /// Directory of <problem>_<level>.csv files
    #[arg(long)]
    data_dir: Option<String>,
    /// Training files, lowest fidelity first
    #[arg(long)]
    train: Option<String>,
    #[arg(long)]
    test: Option<String>,
    #[arg(long)]
    predictions: Option<String>,
    /// Results ledgers to report on
    #[arg(long)]
    results: Option<String>,
    #[arg(long)]
    methods: Option<String>,
    #[arg(long)]
    pairings: Option<String>,
    #[arg(long)]
    budgets: Option<String>,
    /// Rows per fidelity level for generate, e.g. 1000,0,1000
    #[arg(long)]
    counts: Option<String>,
    /// Tuning stage: base, alpha_lambda or weights3f
    #[arg(long)]
    stage: Option<String>,
    /// ONC output: time_to_onc or temp_after_onc
    #[arg(long)]
    output: Option<String>,
    /// Input subset: all, dominant or nondominant
    #[arg(long)]
    subset: Option<String>,
    #[arg(long)]
    layers: Option<String>,
    #[arg(long)]
    width: Option<String>,
    #[arg(long)]
    learning_rate: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    w_m: Option<String>,
    #[arg(long)]
    w_h: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    /// First (or only) seed
    #[arg(long)]
    seed: Option<u64>,
    /// Number of consecutive seeds starting at --seed
    #[arg(long, value_name = "N")]
    seeds: Option<u64>,
    #[arg(long)]
    epochs: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// Reject ONC rows outside the input bounds instead of warning
    #[arg(long)]
    strict_bounds: bool,
    /// Worker threads
    #[arg(long)]
    jobs: Option<String>,
}

impl Opts {
    fn into_config(self, command: Command) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::parse(&fs::read_to_string(p).map_err(|e| Error::io(p, e))?)?,
            None => RunConfig::new(command),
        };
        cfg.command = command;
        let pairs = [
            ("benchmark", self.benchmark),
            ("dim", self.dim),
            ("data_dir", self.data_dir),
            ("train", self.train),
            ("test", self.test),
            ("predictions", self.predictions),
            ("results", self.results),
            ("methods", self.methods),
            ("pairings", self.pairings),
            ("budgets", self.budgets),
            ("counts", self.counts),
            ("stage", self.stage),
            ("output", self.output),
            ("subset", self.subset),
            ("layers", self.layers),
            ("width", self.width),
            ("learning_rate", self.learning_rate),
            ("alpha", self.alpha),
            ("w_m", self.w_m),
            ("w_h", self.w_h),
            ("lambda", self.lambda),
            ("epochs", self.epochs),
            ("out", self.out),
            ("jobs", self.jobs),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v.trim()).map_err(|e| {
                    let msg = match e {
                        Error::Config(m) => m,
                        other => other.to_string(),
                    };
                    Error::Config(format!("--{}: {msg}", key.replace('_', "-")))
                })?;
            }
        }
        if self.strict_bounds {
            cfg.strict_bounds = true;
        }
        match (self.seed, self.seeds) {
            (None, None) => {}
            (Some(s), None) => cfg.seeds = vec![s],
            (s, Some(n)) => {
                let start = s.unwrap_or(0);
                cfg.seeds = (start..start + n).collect();
            }
        }
        Ok(cfg)
    }
}

/// GP fits on large designs recurse deeply inside the Cholesky.
const WORKER_STACK: usize = 16 << 20;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::Generate(o) => (Command::Generate, o),
        Cmd::Tune(o) => (Command::Tune, o),
        Cmd::CostStudy(o) => (Command::CostStudy, o),
        Cmd::Eval(o) => (Command::Eval, o),
        Cmd::Report(o) => (Command::Report, o),
    };
    let result = opts.into_config(command).and_then(|cfg| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs.unwrap_or(0))
            .stack_size(WORKER_STACK)
            .build_global()
            .map_err(|e| Error::Config(format!("--jobs: {e}")))?;
        mfsurrogate_cli::run(&cfg)
    });
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
