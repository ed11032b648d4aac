use alloc::string::String;
use alloc::vec::Vec;

use crate::estimators::{CenteredDesign, FeatureSpec, FitOptions, LinearEstimator};
use crate::reservoirs::{drive, prepare, ReservoirSpec};
use crate::series::train_len;
use crate::stats::mse;
use crate::{Error, Execution, Matrix, ReadoutMatrix, Result};

/// Model label used for the persistence baseline rows of a sweep.
pub const PERSISTENCE: &str = "persistence";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutTraining {
    /// Leading rows dropped before fitting.
    pub washout: usize,
    pub train_fraction: f64,
    pub ridge: f64,
    /// When set, rows end at `T − max_horizon` for every horizon so that all
    /// horizons are scored on the same rows.
    pub max_horizon: Option<usize>,
}

impl Default for ReadoutTraining {
    fn default() -> Self {
        Self {
            washout: 200,
            train_fraction: 0.75,
            ridge: 0.0,
            max_horizon: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionResult {
    pub horizon: usize,
    /// Held-out mean squared error.
    pub mse: f64,
    pub train_mse: f64,
    /// Held-out MSE of predicting `target(t + k)` by `target(t)`.
    pub baseline_mse: f64,
    pub readout: LinearEstimator,
}

/// Row bookkeeping and the factored training design for one recording.
struct PreparedReadout<'a> {
    design: CenteredDesign,
    train: Matrix,
    test: Matrix,
    start: usize,
    end: usize,
    cut: usize,
    target: &'a [f64],
}

impl<'a> PreparedReadout<'a> {
    fn new(
        readouts: &ReadoutMatrix,
        target: &'a [f64],
        reach: usize,
        options: &ReadoutTraining,
    ) -> Result<Self> {
        let t_total = readouts.steps();
        if target.len() != t_total {
            return Err(Error::LengthMismatch {
                what: "target samples vs readout rows",
                left: target.len(),
                right: t_total,
            });
        }
        if options.washout + reach >= t_total {
            return Err(Error::param("horizon", "washout plus horizon leaves no rows"));
        }
        let (start, end) = (options.washout, t_total - reach);
        let cut = train_len(end - start, options.train_fraction)?;
        let nodes = readouts.nodes();
        if options.ridge == 0.0 && nodes + 1 > cut {
            return Err(Error::Underdetermined {
                rows: cut,
                params: nodes + 1,
                hint: "more readout nodes than training rows; enable the ridge option",
            });
        }
        let features = readouts.data().row_range(start, end);
        let train = features.row_range(0, cut);
        let test = features.row_range(cut, end - start);
        let design = CenteredDesign::new(&train, FitOptions { ridge: options.ridge })?
            .with_feature_spec(FeatureSpec::Columns(nodes));
        Ok(Self {
            design,
            train,
            test,
            start,
            end,
            cut,
            target,
        })
    }

    fn horizon(&self, horizon: usize) -> Result<PredictionResult> {
        let y: Vec<f64> = (self.start..self.end).map(|t| self.target[t + horizon]).collect();
        let now = &self.target[self.start + self.cut..self.end];
        let readout = self.design.fit(&y[..self.cut])?;
        Ok(PredictionResult {
            horizon,
            mse: mse(&readout.predict(&self.test), &y[self.cut..]),
            train_mse: mse(&readout.predict(&self.train), &y[..self.cut]),
            baseline_mse: mse(now, &y[self.cut..]),
            readout,
        })
    }
}

/// Fits `target(t + k)` from all node values at `t` on the training prefix
/// and scores the held-out suffix.
pub fn train_readout(
    readouts: &ReadoutMatrix,
    target: &[f64],
    horizon: usize,
    options: &ReadoutTraining,
) -> Result<PredictionResult> {
    let reach = options.max_horizon.unwrap_or(horizon).max(horizon);
    PreparedReadout::new(readouts, target, reach, options)?.horizon(horizon)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model: String,
    pub horizon: usize,
    pub mse: f64,
    pub baseline_mse: f64,
}

/// MSE for every `(model, horizon)` pair, followed by the persistence
/// baseline rows. Rows for all horizons end at `T − max(horizons)`.
pub fn horizon_sweep(
    recorded: &[(String, ReadoutMatrix)],
    target: &[f64],
    horizons: &[usize],
    options: &ReadoutTraining,
    execution: Execution,
) -> Result<Vec<SweepRow>> {
    let max_horizon = horizons.iter().copied().max().unwrap_or(0);
    let prepared = execution.map(recorded, |(_, r)| PreparedReadout::new(r, target, max_horizon, options));
    let prepared: Vec<PreparedReadout<'_>> = prepared.into_iter().collect::<Result<_>>()?;
    let cells: Vec<(usize, usize)> = (0..recorded.len())
        .flat_map(|m| horizons.iter().map(move |&k| (m, k)))
        .collect();
    let results = execution.map(&cells, |&(m, k)| prepared[m].horizon(k));
    let mut rows = Vec::with_capacity(cells.len() + horizons.len());
    let mut baseline = Vec::with_capacity(horizons.len());
    for (&(m, k), r) in cells.iter().zip(results) {
        let r = r?;
        if m == 0 {
            baseline.push((k, r.baseline_mse));
        }
        rows.push(SweepRow {
            model: recorded[m].0.clone(),
            horizon: k,
            mse: r.mse,
            baseline_mse: r.baseline_mse,
        });
    }
    rows.extend(baseline.into_iter().map(|(k, b)| SweepRow {
        model: String::from(PERSISTENCE),
        horizon: k,
        mse: b,
        baseline_mse: b,
    }));
    Ok(rows)
}

/// Prepares and drives every named spec with `input`, then sweeps the
/// horizons with `input` itself as the prediction target.
pub fn run_benchmark(
    specs: &[(String, ReservoirSpec)],
    input: &[f64],
    horizons: &[usize],
    options: &ReadoutTraining,
    execution: Execution,
) -> Result<Vec<SweepRow>> {
    let recorded = execution.map(specs, |(name, spec)| -> Result<(String, ReadoutMatrix)> {
        let mut reservoir = spec.build()?;
        prepare(&mut reservoir, spec.warmup_samples, spec.seed)?;
        Ok((name.clone(), drive(&mut reservoir, input)?))
    });
    let recorded: Vec<(String, ReadoutMatrix)> = recorded.into_iter().collect::<Result<_>>()?;
    horizon_sweep(&recorded, input, horizons, options, execution)
}
