use std::fs;
use std::path::{Path, PathBuf};

use spatial_rc_core::metrics::{analyze as analyze_run, Analysis};
use spatial_rc_core::tasks::{mackey_glass, run_benchmark, SweepRow};
use spatial_rc_core::{random_signal, Execution, TimeSeries};

use crate::config::{RunConfig, SignalConfig};
use crate::error::CliError;
use crate::formats;
use crate::summary;

/// The signal as configured, before any normalization.
pub fn load_signal(config: &RunConfig) -> Result<TimeSeries, CliError> {
    match config.signal()? {
        SignalConfig::Random { length, low, high } => {
            if *length == 0 {
                return Err(CliError::field("signal.length", "must be at least 1"));
            }
            random_signal(*length, *low, *high, config.seed).map_err(|e| CliError::core_field("signal", e))
        }
        SignalConfig::MackeyGlass(params) => mackey_glass(params).map_err(|e| CliError::core_field("signal", e)),
        SignalConfig::File { path, column } => formats::read_time_series(path, column.as_deref()),
    }
}

/// The signal fed to reservoirs: Mackey-Glass series are min-max mapped
/// onto `[-1, 1]`, other signals are used as given.
pub fn drive_signal(config: &RunConfig) -> Result<TimeSeries, CliError> {
    let raw = load_signal(config)?;
    match config.signal()? {
        SignalConfig::MackeyGlass(_) => raw.normalized(-1.0, 1.0).map_err(|e| CliError::core_field("signal", e)),
        _ => Ok(raw),
    }
}

fn prepare_dir(out: &Path) -> Result<(), CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))
}

fn write_text(path: PathBuf, text: &str) -> Result<PathBuf, CliError> {
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn echo_config(config: &RunConfig, out: &Path) -> Result<PathBuf, CliError> {
    write_text(out.join("config.toml"), &config.echo())
}

/// Writes `signal.csv` and the echoed config.
pub fn generate(config: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let signal = load_signal(config)?;
    prepare_dir(out)?;
    let path = out.join("signal.csv");
    formats::write_time_series(&path, &signal, "u", &[])?;
    Ok(vec![path, echo_config(config, out)?])
}

/// Runs the drive/relax protocol and writes the three maps as CSV and
/// pixmaps, the recorded data, `summary.txt` and the echoed config.
pub fn analyze(config: &RunConfig, out: &Path, execution: Execution) -> Result<(Analysis, Vec<PathBuf>), CliError> {
    let spec = config.reservoir_spec()?;
    let metrics = config.metric_config(execution)?;
    let signal = drive_signal(config)?;
    let analysis = analyze_run(signal.values(), &spec, &metrics)?;

    prepare_dir(out)?;
    let mut written = Vec::new();
    for (stem, map) in [
        ("nl", &analysis.nonlinearity),
        ("mc", &analysis.memory_capacity),
        ("stability", &analysis.stability),
    ] {
        let csv = out.join(format!("{stem}.csv"));
        formats::write_metric_map(&csv, map)?;
        written.push(csv);
        let ppm = out.join(format!("{stem}.ppm"));
        if formats::write_heatmap(&ppm, map)? {
            written.push(ppm.with_extension("range"));
            written.push(ppm);
        }
    }
    let path = out.join("signal.csv");
    formats::write_time_series(&path, &signal, "u", &[])?;
    written.push(path);
    let path = out.join("readouts.csv");
    formats::write_readouts(&path, &analysis.readouts, signal.t0())?;
    written.push(path);
    let path = out.join("layout.csv");
    formats::write_layout(&path, analysis.readouts.layout())?;
    written.push(path);
    if let Some(grains) = spec.build()?.grains() {
        let path = out.join("grains.csv");
        formats::write_grains(&path, grains)?;
        written.push(path);
    }
    let text = summary::analysis_summary(&config.name, spec.model_name(), &analysis, spec.drive.direction);
    written.push(write_text(out.join("summary.txt"), &text)?);
    written.push(echo_config(config, out)?);
    Ok((analysis, written))
}

/// Drives every `[[models]]` reservoir with the signal and scores k-step
/// prediction of the signal itself for `k = 1..=k_max`.
pub fn benchmark(config: &RunConfig, out: &Path, execution: Execution) -> Result<(Vec<SweepRow>, Vec<PathBuf>), CliError> {
    let specs = config.model_specs()?;
    let training = config.training()?;
    let signal = drive_signal(config)?;
    let horizons: Vec<usize> = (1..=config.task.k_max).collect();
    let rows = run_benchmark(&specs, signal.values(), &horizons, &training, execution)?;

    prepare_dir(out)?;
    let mut meta = vec![
        ("signal".to_string(), signal.meta.generator.clone()),
        ("washout".to_string(), training.washout.to_string()),
        ("train_fraction".to_string(), training.train_fraction.to_string()),
        ("ridge".to_string(), training.ridge.to_string()),
        ("seed".to_string(), config.seed.to_string()),
    ];
    if !signal.meta.params.is_empty() {
        let params: Vec<String> = signal.meta.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        meta.push(("signal_params".into(), params.join(",")));
    }
    let path = out.join("benchmark.csv");
    formats::write_sweep(&path, &rows, &meta)?;
    let mut written = vec![path];
    written.push(write_text(out.join("summary.txt"), &summary::benchmark_summary(&config.name, &rows))?);
    written.push(echo_config(config, out)?);
    Ok((rows, written))
}
