//! Per-node nonlinearity, local memory capacity and stability maps.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Execution, SpatialLayout};

mod analyze;
mod embed;
mod memory;
mod neighborhoods;
mod nonlinearity;
mod stability;

pub use analyze::{analyze, analyze_reservoir, Analysis};
pub use embed::delay_embed;
pub use memory::{memory_capacity_map, memory_curves};
pub use neighborhoods::{build_neighborhoods, NeighborhoodIndex};
pub use nonlinearity::nonlinearity_map;
pub use stability::stability_map;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Nonlinearity,
    MemoryCapacity,
    Stability,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Nonlinearity => "nonlinearity",
            MetricKind::MemoryCapacity => "memory_capacity",
            MetricKind::Stability => "stability",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-fatal findings attached to a map.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    /// The node trace is constant over the evaluated rows; its
    /// nonlinearity is defined as zero.
    ConstantTrace { node: usize },
    /// Recall at the cutoff delay is still above 0.1; memory likely
    /// extends past `k`.
    MemoryBeyondCutoff { node: usize, r2_at_k: f64 },
    Note(String),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::ConstantTrace { node } => {
                write!(f, "node {node}: constant trace, nonlinearity set to 0")
            }
            Diagnostic::MemoryBeyondCutoff { node, r2_at_k } => write!(
                f,
                "node {node}: recall R^2 at the cutoff delay is {r2_at_k:.3} (> 0.1); consider a larger k"
            ),
            Diagnostic::Note(s) => f.write_str(s),
        }
    }
}

/// Parameters shared by the nonlinearity and memory maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricConfig {
    /// Delay cutoff: embedding depth for nonlinearity, largest recalled
    /// delay for memory capacity.
    pub k: usize,
    /// Neighbourhood radius; `None` means twice the readout pitch.
    pub threshold_distance: Option<f64>,
    /// Leading samples discarded before any fit.
    pub washout: usize,
    pub train_fraction: f64,
    pub ridge: f64,
    pub execution: Execution,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            k: 20,
            threshold_distance: None,
            washout: 500,
            train_fraction: 0.75,
            ridge: 0.0,
            execution: Execution::default(),
        }
    }
}

impl MetricConfig {
    /// First row used by the estimators: the washout, but never earlier than
    /// `k` so that every delay up to `k` is defined.
    pub fn first_row(&self) -> usize {
        self.washout.max(self.k)
    }

    pub fn resolved_threshold(&self, layout: &SpatialLayout) -> f64 {
        self.threshold_distance.unwrap_or_else(|| 2.0 * layout.pitch())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricParams {
    pub k: Option<usize>,
    pub threshold_distance: Option<f64>,
    pub washout: usize,
}

/// A scalar per readout node.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMap {
    pub kind: MetricKind,
    pub values: Vec<f64>,
    pub layout: SpatialLayout,
    pub params: MetricParams,
    pub diagnostics: Vec<Diagnostic>,
}

impl MetricMap {
    pub fn mean(&self) -> f64 {
        crate::stats::mean(&self.values)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}
