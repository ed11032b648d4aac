//! Desk-scale surrogate reservoirs with spatially located readouts.
//!
//! Every model implements [`Reservoir`]: hold an input value for one
//! integration step, expose the internal state (for relaxation and the
//! divergence guard) and a readout snapshot on its [`SpatialLayout`]. The
//! protocol functions [`drive`], [`relax`] and [`prepare`] are written once
//! against that trait.

use alloc::vec::Vec;

use crate::{Error, Result, SpatialLayout};

mod grains;
mod particles;
mod protocol;
mod simple;
mod spec;
mod tanh;

pub use grains::{voronoi_grains, GrainMap};
pub use particles::PinnedParticles;
pub use protocol::{
    drive, prepare, relax, warm_up, RelaxReport, OVERFLOW_GUARD, POLISH_STEPS, RELAX_MAX_STEPS,
    RELAX_TOLERANCE,
};
pub use simple::{DelayLine, LtiFilterBank, PolynomialBank};
pub use spec::{
    FilterParams, GrainSpec, ModelParams, ParticleParams, PolynomialParams, ReservoirSpec,
    TanhParams,
};
pub use tanh::TanhLattice;

/// How the scalar input couples into a reservoir.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct DriveConfig {
    /// Input scaling applied to every sample.
    pub input_gain: f64,
    /// Input samples per unit of model time; each sample is held for
    /// `1 / time_scale`.
    pub time_scale: f64,
    /// Unit vector of the drive direction.
    pub direction: [f64; 2],
}

impl Default for DriveConfig {
    fn default() -> Self {
        Self {
            input_gain: 1.0,
            time_scale: 1.0,
            direction: [1.0, 0.0],
        }
    }
}

impl DriveConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.input_gain.is_finite() {
            return Err(Error::param("input_gain", "must be finite"));
        }
        if !(self.time_scale > 0.0) || !self.time_scale.is_finite() {
            return Err(Error::param("time_scale", "must be positive"));
        }
        let [dx, dy] = self.direction;
        let norm = libm::sqrt(dx * dx + dy * dy);
        if !((norm - 1.0).abs() <= 1e-12) {
            return Err(Error::param("direction", "must have unit norm"));
        }
        Ok(())
    }

    /// Model time each input sample is held for.
    pub fn hold_time(&self) -> f64 {
        1.0 / self.time_scale
    }
}

/// Drive/readout/relax interface shared by all surrogates.
pub trait Reservoir {
    fn layout(&self) -> &SpatialLayout;

    fn drive_config(&self) -> &DriveConfig;

    /// Model time covered by one call to [`Reservoir::step`].
    fn step_duration(&self) -> f64;

    /// Integrates one step with the raw input `u` (gain is applied inside).
    fn step(&mut self, u: f64);

    /// Internal state used for convergence checks and the overflow guard.
    fn state(&self) -> &[f64];

    /// Readout values, one per layout node.
    fn snapshot(&self) -> Vec<f64>;

    /// Integration steps per held input sample.
    fn steps_per_sample(&self) -> Result<usize> {
        let ratio = self.drive_config().hold_time() / self.step_duration();
        let n = libm::round(ratio);
        if n < 1.0 || libm::fabs(ratio - n) > 1e-9 * n.max(1.0) {
            return Err(Error::param(
                "time_scale",
                alloc::format!(
                    "hold time {} is not a whole number of model steps ({})",
                    self.drive_config().hold_time(),
                    self.step_duration()
                ),
            ));
        }
        Ok(n as usize)
    }
}

/// Any of the built-in surrogates.
#[derive(Debug, Clone)]
pub enum Surrogate {
    TanhLattice(TanhLattice),
    PinnedParticles(PinnedParticles),
    DelayLine(DelayLine),
    LtiFilterBank(LtiFilterBank),
    PolynomialBank(PolynomialBank),
}

macro_rules! dispatch {
    ($self:ident, $r:ident => $e:expr) => {
        match $self {
            Surrogate::TanhLattice($r) => $e,
            Surrogate::PinnedParticles($r) => $e,
            Surrogate::DelayLine($r) => $e,
            Surrogate::LtiFilterBank($r) => $e,
            Surrogate::PolynomialBank($r) => $e,
        }
    };
}

impl Reservoir for Surrogate {
    fn layout(&self) -> &SpatialLayout {
        dispatch!(self, r => r.layout())
    }

    fn drive_config(&self) -> &DriveConfig {
        dispatch!(self, r => r.drive_config())
    }

    fn step_duration(&self) -> f64 {
        dispatch!(self, r => r.step_duration())
    }

    fn step(&mut self, u: f64) {
        dispatch!(self, r => r.step(u))
    }

    fn state(&self) -> &[f64] {
        dispatch!(self, r => r.state())
    }

    fn snapshot(&self) -> Vec<f64> {
        dispatch!(self, r => r.snapshot())
    }
}

impl Surrogate {
    pub fn model_name(&self) -> &'static str {
        match self {
            Surrogate::TanhLattice(_) => "tanh_lattice",
            Surrogate::PinnedParticles(_) => "pinned_particles",
            Surrogate::DelayLine(_) => "delay_line",
            Surrogate::LtiFilterBank(_) => "lti_filter_bank",
            Surrogate::PolynomialBank(_) => "polynomial_bank",
        }
    }

    pub fn grains(&self) -> Option<&GrainMap> {
        match self {
            Surrogate::TanhLattice(r) => r.grains(),
            Surrogate::PinnedParticles(r) => Some(r.grains()),
            _ => None,
        }
    }
}
