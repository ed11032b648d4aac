use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spatial_rc::commands;
use spatial_rc::config::{RunConfig, SignalConfig, SCHEMA_VERSION};
use spatial_rc::CliError;
use spatial_rc_core::tasks::MackeyGlassParams;
use spatial_rc_core::Execution;

#[derive(Parser)]
#[command(name = "spatial-rc", version, about = "Spatial nonlinearity, memory and stability maps for reservoir surrogates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Run configuration (TOML).
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; defaults to the configured one, then `out/<name>`.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Worker threads, 0 for one per core. 1 runs everything sequentially.
    #[arg(long, env = "SPATIAL_RC_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignalKind {
    Random,
    MackeyGlass,
}

#[derive(Subcommand)]
enum Command {
    /// Write an input signal as CSV.
    Generate {
        #[command(flatten)]
        common: Common,
        /// Signal kind when no config is given, or to replace the configured one.
        #[arg(long, value_enum)]
        kind: Option<SignalKind>,
        /// Sample count for random signals.
        #[arg(long)]
        length: Option<usize>,
    },
    /// Drive one reservoir and write its nonlinearity, memory-capacity and
    /// stability maps.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// k-step-ahead prediction sweep over the configured models.
    Benchmark {
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common, required: bool) -> Result<RunConfig, CliError> {
    let mut config = match (&common.config, required) {
        (Some(path), _) => RunConfig::load(path)?,
        (None, true) => return Err(CliError::field("--config", "a run configuration is required")),
        (None, false) => RunConfig {
            schema_version: SCHEMA_VERSION,
            name: "signal".into(),
            seed: 1,
            output_dir: None,
            signal: None,
            reservoir: None,
            models: Vec::new(),
            metrics: Default::default(),
            task: Default::default(),
        },
    };
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn output_dir(common: &Common, config: &RunConfig) -> PathBuf {
    common
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| Path::new("out").join(&config.name))
}

fn execution(threads: usize) -> Result<Execution, CliError> {
    if threads == 1 {
        return Ok(Execution::Sequential);
    }
    if threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::field("--threads", e))?;
    }
    Ok(Execution::Parallel)
}

fn report(written: &[PathBuf]) {
    for path in written {
        println!("wrote {}", path.display());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate { common, kind, length } => {
            let mut config = load(&common, false)?;
            match (kind, length) {
                (Some(SignalKind::MackeyGlass), None) => {
                    config.signal = Some(SignalConfig::MackeyGlass(MackeyGlassParams::default()))
                }
                (Some(SignalKind::MackeyGlass), Some(_)) => {
                    return Err(CliError::field("--length", "only applies to random signals"))
                }
                (Some(SignalKind::Random), length) => {
                    config.signal = Some(SignalConfig::Random {
                        length: length.unwrap_or(1500),
                        low: -1.0,
                        high: 1.0,
                    })
                }
                (None, Some(n)) => match config.signal.as_mut() {
                    Some(SignalConfig::Random { length, .. }) => *length = n,
                    None => config.signal = Some(SignalConfig::Random { length: n, low: -1.0, high: 1.0 }),
                    Some(_) => return Err(CliError::field("--length", "only applies to random signals")),
                },
                (None, None) => {}
            }
            execution(common.threads)?;
            let out = output_dir(&common, &config);
            report(&commands::generate(&config, &out)?);
        }
        Command::Analyze { common } => {
            let config = load(&common, true)?;
            let exec = execution(common.threads)?;
            let out = output_dir(&common, &config);
            let (analysis, written) = commands::analyze(&config, &out, exec)?;
            report(&written);
            let k = config.metrics.k;
            println!(
                "mean nonlinearity {:.4}, mean memory capacity {:.4} (k = {k}), mean stability {:.3e}",
                analysis.nonlinearity.mean(),
                analysis.memory_capacity.mean(),
                analysis.stability.mean()
            );
        }
        Command::Benchmark { common } => {
            let config = load(&common, true)?;
            let exec = execution(common.threads)?;
            let out = output_dir(&common, &config);
            let (_, written) = commands::benchmark(&config, &out, exec)?;
            report(&written);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
