//! Linear estimators and the squared-correlation quality score shared by the
//! nonlinearity and memory metrics.

use alloc::vec::Vec;

use crate::linalg::LeastSquares;
use crate::matrix::Matrix;
use crate::series::train_len;
use crate::stats;
use crate::{Error, Result};

/// How the feature vector of an estimator was built.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureSpec {
    /// Plain design-matrix columns.
    Columns(usize),
    /// `[u(t), u(t-1), …, u(t-k)]`.
    DelayEmbedding { k: usize },
    /// Values of the listed readout nodes at time `t`.
    Neighborhood { members: Vec<usize> },
}

/// Fitted `ŷ = c + Σ w_i x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEstimator {
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub feature_spec: FeatureSpec,
}

impl LinearEstimator {
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        self.intercept
            + self
                .weights
                .iter()
                .zip(row)
                .map(|(w, x)| w * x)
                .sum::<f64>()
    }

    pub fn predict(&self, features: &Matrix) -> Vec<f64> {
        (0..features.rows())
            .map(|i| self.predict_row(features.row(i)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FitOptions {
    /// Tikhonov penalty on the weights (not the intercept). Zero is plain
    /// least squares.
    pub ridge: f64,
}

/// A factored, column-centred design matrix that fits any number of targets.
///
/// Centring takes the intercept out of the norm being minimized, so for
/// rank-deficient designs the weights are minimum-norm and the intercept
/// is `ȳ − w·x̄`.
#[derive(Debug, Clone)]
pub struct CenteredDesign {
    means: Vec<f64>,
    solver: LeastSquares,
    rows: usize,
    ridge_rows: usize,
    feature_spec: FeatureSpec,
}

impl CenteredDesign {
    pub fn new(features: &Matrix, options: FitOptions) -> Result<Self> {
        let (t, d) = (features.rows(), features.cols());
        if !(options.ridge >= 0.0) || !options.ridge.is_finite() {
            return Err(Error::param("ridge", "must be finite and non-negative"));
        }
        if options.ridge == 0.0 && t < d + 1 {
            return Err(Error::Underdetermined {
                rows: t,
                params: d + 1,
                hint: "provide at least d+1 rows or enable the ridge option",
            });
        }
        if t == 0 {
            return Err(Error::Underdetermined {
                rows: 0,
                params: d + 1,
                hint: "no rows",
            });
        }
        if !features.is_finite() {
            return Err(Error::NonFinite("features"));
        }
        let means: Vec<f64> = (0..d)
            .map(|j| (0..t).map(|i| features.get(i, j)).sum::<f64>() / t as f64)
            .collect();
        let ridge_rows = if options.ridge > 0.0 { d } else { 0 };
        let mut centered = Matrix::zeros(t + ridge_rows, d);
        for i in 0..t {
            for j in 0..d {
                centered.set(i, j, features.get(i, j) - means[j]);
            }
        }
        let s = libm::sqrt(options.ridge);
        for j in 0..ridge_rows {
            centered.set(t + j, j, s);
        }
        Ok(Self {
            means,
            solver: LeastSquares::new(&centered),
            rows: t,
            ridge_rows,
            feature_spec: FeatureSpec::Columns(d),
        })
    }

    pub fn with_feature_spec(mut self, spec: FeatureSpec) -> Self {
        self.feature_spec = spec;
        self
    }

    pub fn rank(&self) -> usize {
        self.solver.rank()
    }

    pub fn fit(&self, targets: &[f64]) -> Result<LinearEstimator> {
        if targets.len() != self.rows {
            return Err(Error::LengthMismatch {
                what: "targets vs feature rows",
                left: targets.len(),
                right: self.rows,
            });
        }
        if targets.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("targets"));
        }
        let y_mean = stats::mean(targets);
        let mut rhs: Vec<f64> = targets.iter().map(|y| y - y_mean).collect();
        rhs.resize(self.rows + self.ridge_rows, 0.0);
        let weights = self.solver.solve(&rhs);
        let intercept = y_mean
            - weights
                .iter()
                .zip(&self.means)
                .map(|(w, m)| w * m)
                .sum::<f64>();
        Ok(LinearEstimator {
            weights,
            intercept,
            feature_spec: self.feature_spec.clone(),
        })
    }
}

/// Least-squares fit of `targets` on `features` plus an intercept.
///
/// Rank-deficient designs yield the minimum-norm weights. Requires at least
/// `d + 1` rows.
pub fn fit_ols(features: &Matrix, targets: &[f64]) -> Result<LinearEstimator> {
    fit_ols_with(features, targets, FitOptions::default())
}

pub fn fit_ols_with(
    features: &Matrix,
    targets: &[f64],
    options: FitOptions,
) -> Result<LinearEstimator> {
    if features.rows() != targets.len() {
        return Err(Error::LengthMismatch {
            what: "targets vs feature rows",
            left: targets.len(),
            right: features.rows(),
        });
    }
    CenteredDesign::new(features, options)?.fit(targets)
}

/// Squared Pearson correlation `cov²(ŷ, y) / (σ²(ŷ) σ²(y))`, clamped to
/// `[0, 1]`. Returns `0` if either series is constant.
pub fn r_squared(predicted: &[f64], actual: &[f64]) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch {
            what: "predicted vs actual",
            left: predicted.len(),
            right: actual.len(),
        });
    }
    if predicted.len() < 2 {
        return Err(Error::param("predicted", "need at least two samples"));
    }
    if predicted.iter().chain(actual).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("r_squared inputs"));
    }
    let vp = stats::variance(predicted);
    let va = stats::variance(actual);
    if vp == 0.0 || va == 0.0 {
        return Ok(0.0);
    }
    let c = stats::covariance(predicted, actual);
    Ok(((c * c) / (vp * va)).clamp(0.0, 1.0))
}

/// Fits on the leading `train_fraction` of rows and returns the R² of the
/// held-out suffix.
pub fn estimator_quality(features: &Matrix, targets: &[f64], train_fraction: f64) -> Result<f64> {
    if features.rows() != targets.len() {
        return Err(Error::LengthMismatch {
            what: "targets vs feature rows",
            left: targets.len(),
            right: features.rows(),
        });
    }
    let cut = train_len(targets.len(), train_fraction)?;
    let est = fit_ols(&features.row_range(0, cut), &targets[..cut])?;
    let pred = est.predict(&features.row_range(cut, features.rows()));
    r_squared(&pred, &targets[cut..])
}
