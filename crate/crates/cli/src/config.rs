//! Run configuration, read from TOML.
//!
//! ```toml
//! schema_version = 1
//! name = "gradient"
//! seed = 1
//!
//! [signal]
//! kind = "random"          # random | mackey_glass | file
//! length = 1500
//!
//! [reservoir]
//! cols = 16
//! rows = 8
//! model = { kind = "tanh_lattice", gain_low = 0.2, gain_high = 5.0 }
//!
//! [metrics]
//! k = 20
//! ```
//!
//! `benchmark` reads `[[models]]` entries (each a `name` plus the same keys
//! as `[reservoir]`) and the `[task]` table instead of `[reservoir]` and
//! `[metrics]`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spatial_rc_core::metrics::MetricConfig;
use spatial_rc_core::reservoirs::{GrainSpec, ModelParams};
use spatial_rc_core::tasks::{MackeyGlassParams, ReadoutTraining};
use spatial_rc_core::{DriveConfig, Execution, ReservoirSpec};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub name: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Where outputs go unless `--out` is given. Not echoed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<SignalConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reservoir: Option<ReservoirConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub models: Vec<NamedReservoir>,
    #[serde(default)]
    pub metrics: MetricsConfig,
    #[serde(default)]
    pub task: TaskConfig,
}

fn default_seed() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SignalConfig {
    /// I.i.d. uniform samples in `[low, high)`, seeded by the run seed.
    Random {
        length: usize,
        #[serde(default = "minus_one")]
        low: f64,
        #[serde(default = "plus_one")]
        high: f64,
    },
    /// Mackey-Glass series, min-max normalized to `[-1, 1]` before driving.
    MackeyGlass(MackeyGlassParams),
    /// A CSV file as written by `generate`; `column` defaults to the first
    /// value column.
    File {
        path: PathBuf,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        column: Option<String>,
    },
}

fn minus_one() -> f64 {
    -1.0
}

fn plus_one() -> f64 {
    1.0
}

/// A reservoir spec without its seed; the run seed is used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReservoirConfig {
    pub cols: usize,
    pub rows: usize,
    #[serde(default)]
    pub drive: DriveConfig,
    pub model: ModelParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grain: Option<GrainSpec>,
    #[serde(default = "default_warmup")]
    pub warmup_samples: usize,
}

fn default_warmup() -> usize {
    200
}

impl ReservoirConfig {
    pub fn to_spec(&self, seed: u64) -> ReservoirSpec {
        ReservoirSpec {
            cols: self.cols,
            rows: self.rows,
            drive: self.drive,
            model: self.model,
            grain: self.grain,
            warmup_samples: self.warmup_samples,
            seed,
        }
    }
}

/// A `[[models]]` entry: a name plus the keys of [`ReservoirConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedReservoir {
    pub name: String,
    pub cols: usize,
    pub rows: usize,
    #[serde(default)]
    pub drive: DriveConfig,
    pub model: ModelParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grain: Option<GrainSpec>,
    #[serde(default = "default_warmup")]
    pub warmup_samples: usize,
}

impl NamedReservoir {
    pub fn reservoir(&self) -> ReservoirConfig {
        ReservoirConfig {
            cols: self.cols,
            rows: self.rows,
            drive: self.drive,
            model: self.model,
            grain: self.grain,
            warmup_samples: self.warmup_samples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricsConfig {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_distance: Option<f64>,
    pub washout: usize,
    pub train_fraction: f64,
    pub ridge: f64,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        let d = MetricConfig::default();
        Self {
            k: d.k,
            threshold_distance: d.threshold_distance,
            washout: d.washout,
            train_fraction: d.train_fraction,
            ridge: d.ridge,
        }
    }
}

impl MetricsConfig {
    pub fn to_metric_config(&self, execution: Execution) -> MetricConfig {
        MetricConfig {
            k: self.k,
            threshold_distance: self.threshold_distance,
            washout: self.washout,
            train_fraction: self.train_fraction,
            ridge: self.ridge,
            execution,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TaskConfig {
    /// Horizons `1..=k_max` are scored.
    pub k_max: usize,
    pub washout: usize,
    pub train_fraction: f64,
    pub ridge: f64,
}

impl Default for TaskConfig {
    fn default() -> Self {
        let d = ReadoutTraining::default();
        Self {
            k_max: 50,
            washout: d.washout,
            train_fraction: d.train_fraction,
            ridge: d.ridge,
        }
    }
}

impl TaskConfig {
    pub fn to_training(&self) -> ReadoutTraining {
        ReadoutTraining {
            washout: self.washout,
            train_fraction: self.train_fraction,
            ridge: self.ridge,
            max_horizon: Some(self.k_max),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if config.schema_version != SCHEMA_VERSION {
            return Err(CliError::field(
                "schema_version",
                format!("unsupported version {} (expected {SCHEMA_VERSION})", config.schema_version),
            ));
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text).map_err(|e| e.in_file(path))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configs always serialize")
    }

    /// The copy written next to the outputs: everything that determines
    /// their contents and nothing about where they were written.
    pub fn echo(&self) -> String {
        let mut copy = self.clone();
        copy.output_dir = None;
        copy.to_toml()
    }

    pub fn signal(&self) -> Result<&SignalConfig, CliError> {
        self.signal
            .as_ref()
            .ok_or_else(|| CliError::field("signal", "missing [signal] table"))
    }

    pub fn reservoir_spec(&self) -> Result<ReservoirSpec, CliError> {
        let r = self
            .reservoir
            .as_ref()
            .ok_or_else(|| CliError::field("reservoir", "missing [reservoir] table"))?;
        let spec = r.to_spec(self.seed);
        spec.build().map_err(|e| CliError::core_field("reservoir", e))?;
        Ok(spec)
    }

    pub fn model_specs(&self) -> Result<Vec<(String, ReservoirSpec)>, CliError> {
        if self.models.is_empty() {
            return Err(CliError::field("models", "benchmark needs at least one [[models]] entry"));
        }
        let mut out = Vec::with_capacity(self.models.len());
        for (i, m) in self.models.iter().enumerate() {
            if m.name.is_empty() || m.name == spatial_rc_core::tasks::PERSISTENCE {
                return Err(CliError::field(
                    format!("models[{i}].name"),
                    "must be non-empty and not the baseline label",
                ));
            }
            if out.iter().any(|(n, _): &(String, ReservoirSpec)| *n == m.name) {
                return Err(CliError::field(format!("models[{i}].name"), format!("duplicate name {:?}", m.name)));
            }
            let spec = m.reservoir().to_spec(self.seed);
            spec.build().map_err(|e| CliError::core_field(format!("models[{i}]"), e))?;
            out.push((m.name.clone(), spec));
        }
        Ok(out)
    }

    pub fn metric_config(&self, execution: Execution) -> Result<MetricConfig, CliError> {
        let m = &self.metrics;
        if m.k == 0 {
            return Err(CliError::field("metrics.k", "MC requires k ≥ 1"));
        }
        if !(m.train_fraction > 0.0 && m.train_fraction < 1.0) {
            return Err(CliError::field("metrics.train_fraction", "must lie strictly between 0 and 1"));
        }
        if let Some(d) = m.threshold_distance {
            if !(d >= 0.0) || !d.is_finite() {
                return Err(CliError::field("metrics.threshold_distance", "must be finite and non-negative"));
            }
        }
        if !(m.ridge >= 0.0) {
            return Err(CliError::field("metrics.ridge", "must be non-negative"));
        }
        Ok(m.to_metric_config(execution))
    }

    pub fn training(&self) -> Result<ReadoutTraining, CliError> {
        let t = &self.task;
        if t.k_max == 0 {
            return Err(CliError::field("task.k_max", "must be at least 1"));
        }
        if !(t.train_fraction > 0.0 && t.train_fraction < 1.0) {
            return Err(CliError::field("task.train_fraction", "must lie strictly between 0 and 1"));
        }
        if !(t.ridge >= 0.0) {
            return Err(CliError::field("task.ridge", "must be non-negative"));
        }
        Ok(t.to_training())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spatial_rc_core::reservoirs::TanhParams;

    const SAMPLE: &str = r#"
schema_version = 1
name = "sample"
seed = 7

[signal]
kind = "mackey_glass"
t_end = 900.0

[reservoir]
cols = 4
rows = 3
model = { kind = "tanh_lattice", gain_low = 0.2, gain_high = 5.0 }
grain = { mean_grain_size = 2.0, variance_fraction = 0.2 }

[[models]]
name = "low"
cols = 4
rows = 3
model = { kind = "tanh_lattice", gain_low = 0.2, gain_high = 0.2 }

[metrics]
k = 12
threshold_distance = 1.5
"#;

    #[test]
    fn parses_and_fills_defaults() {
        let c = RunConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(c.seed, 7);
        let Some(SignalConfig::MackeyGlass(mg)) = c.signal else { panic!() };
        assert_eq!(mg.tau, 23.0);
        assert_eq!(mg.t_end, 900.0);
        let spec = c.reservoir_spec().unwrap();
        assert_eq!(spec.seed, 7);
        assert_eq!(spec.model, ModelParams::TanhLattice(TanhParams::gradient(0.2, 5.0)));
        assert_eq!(c.metrics.washout, 500);
        assert_eq!(c.task.k_max, 50);
        assert_eq!(c.models[0].warmup_samples, 200);
    }

    #[test]
    fn round_trips_exactly() {
        let c = RunConfig::from_toml(SAMPLE).unwrap();
        let text = c.to_toml();
        let back = RunConfig::from_toml(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_toml(), text);
    }

    #[test]
    fn unknown_keys_are_rejected_with_their_name() {
        let err = RunConfig::from_toml(&SAMPLE.replace("k = 12", "kay = 12")).unwrap_err();
        assert!(err.to_string().contains("kay"), "{err}");
        let err = RunConfig::from_toml(&SAMPLE.replace("gain_low = 0.2, gain_high = 5.0", "gain = 1.0")).unwrap_err();
        assert!(err.to_string().contains("gain"), "{err}");
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let c = RunConfig::from_toml(&SAMPLE.replace("k = 12", "k = 0")).unwrap();
        let err = c.metric_config(Execution::Sequential).unwrap_err();
        assert!(err.to_string().contains("metrics.k") && err.to_string().contains("MC requires k ≥ 1"));

        let mut c = RunConfig::from_toml(SAMPLE).unwrap();
        c.signal = None;
        assert!(c.signal().unwrap_err().to_string().contains("signal"));

        let c = RunConfig::from_toml(&SAMPLE.replace("cols = 4\nrows = 3\nmodel = { kind = \"tanh_lattice\", gain_low = 0.2, gain_high = 5.0 }", "cols = 0\nrows = 3\nmodel = { kind = \"delay_line\" }")).unwrap();
        assert!(c.reservoir_spec().unwrap_err().to_string().starts_with("reservoir"));

        let err = RunConfig::from_toml(&SAMPLE.replace("schema_version = 1", "schema_version = 9")).unwrap_err();
        assert!(err.to_string().contains("schema_version"));
    }
}
