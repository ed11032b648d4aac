//! Spatially resolved reservoir-computing metrics.
//!
//! The crate computes three per-node fields from a single recorded
//! `(input, readout)` pair:
//!
//! * **nonlinearity** `NL_n = 1 - R²` of the best linear delay-embedded
//!   predictor of node `n`'s trace,
//! * **local memory capacity** `MC_n = Σ_τ R²` of recalling `u(t-τ)` from the
//!   readout nodes within a threshold distance of `n`,
//! * **stability**, the per-node difference between the relaxed state before
//!   and after a drive.
//!
//! It also ships desk-scale surrogate reservoirs with spatially located
//! readouts and the Mackey-Glass k-step prediction task.
//!
//! The crate is `no_std` (with `alloc`). Enable `parallel` for a rayon-backed
//! engine and `serde` for configuration (de)serialization.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

mod error;
pub mod estimators;
pub mod exec;
pub mod layout;
pub mod linalg;
pub mod matrix;
pub mod metrics;
pub mod reservoirs;
pub mod rng;
pub mod series;
pub mod stats;
pub mod tasks;

pub use error::{Error, Result};
pub use estimators::{estimator_quality, fit_ols, r_squared, FeatureSpec, LinearEstimator};
pub use exec::Execution;
pub use layout::{DistanceMetric, SpatialLayout};
pub use matrix::{Matrix, ReadoutMatrix};
pub use metrics::{MetricKind, MetricMap};
pub use reservoirs::{DriveConfig, Reservoir, ReservoirSpec, Surrogate};
pub use rng::Prng;
pub use series::{random_signal, split_train_test, Provenance, TimeSeries};
