use super::{
    voronoi_grains, DelayLine, DriveConfig, GrainMap, LtiFilterBank, PinnedParticles,
    PolynomialBank, Surrogate, TanhLattice,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct TanhParams {
    /// Leak rate `α ∈ (0, 1]`.
    pub leak: f64,
    /// Nearest-neighbour stencil weight.
    pub coupling: f64,
    /// Gain at the upstream end of the drive axis.
    pub gain_low: f64,
    /// Gain at the downstream end; equal to `gain_low` for a uniform field.
    pub gain_high: f64,
}

impl Default for TanhParams {
    fn default() -> Self {
        Self {
            leak: 0.3,
            coupling: 0.05,
            gain_low: 1.0,
            gain_high: 1.0,
        }
    }
}

impl TanhParams {
    pub fn uniform(gain: f64) -> Self {
        Self {
            gain_low: gain,
            gain_high: gain,
            ..Self::default()
        }
    }

    pub fn gradient(low: f64, high: f64) -> Self {
        Self {
            gain_low: low,
            gain_high: high,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.leak > 0.0 && self.leak <= 1.0) {
            return Err(Error::param("leak", "must lie in (0, 1]"));
        }
        for (name, v) in [("coupling", self.coupling), ("gain_low", self.gain_low), ("gain_high", self.gain_high)] {
            if !v.is_finite() {
                return Err(Error::param(name, "must be finite"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ParticleParams {
    /// Readout cell edge in domain units.
    pub cell_size: f64,
    pub particle_count: usize,
    pub well_depth: f64,
    /// Gaussian well width `σ`.
    pub well_width: f64,
    /// Euler step; defaults to 0.1 of the fastest well time constant.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub dt: Option<f64>,
    /// Smoothing width of the density readout; defaults to half a cell.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub readout_width: Option<f64>,
}

impl Default for ParticleParams {
    fn default() -> Self {
        Self {
            cell_size: 8.0,
            particle_count: 24,
            well_depth: 1.0,
            well_width: 2.0,
            dt: None,
            readout_width: None,
        }
    }
}

impl ParticleParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("cell_size", self.cell_size),
            ("well_depth", self.well_depth),
            ("well_width", self.well_width),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::param(name, "must be positive and finite"));
            }
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0) {
                return Err(Error::param("dt", "must be positive"));
            }
        }
        if let Some(w) = self.readout_width {
            if !(w > 0.0) {
                return Err(Error::param("readout_width", "must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct FilterParams {
    pub leak_min: f64,
    pub leak_max: f64,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self {
            leak_min: 0.3,
            leak_max: 0.9,
        }
    }
}

impl FilterParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.leak_min > 0.0 && self.leak_min <= self.leak_max && self.leak_max <= 1.0) {
            return Err(Error::param("leak", "need 0 < leak_min <= leak_max <= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct PolynomialParams {
    pub degree: usize,
}

impl Default for PolynomialParams {
    fn default() -> Self {
        Self { degree: 6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)
)]
pub enum ModelParams {
    TanhLattice(TanhParams),
    PinnedParticles(ParticleParams),
    DelayLine,
    LtiFilterBank(FilterParams),
    PolynomialBank(PolynomialParams),
}

/// Grain landscape parameters. Sizes are in grain-grid units: lattice nodes
/// for the tanh lattice, domain units for the particle model.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct GrainSpec {
    pub mean_grain_size: f64,
    pub variance_fraction: f64,
}

/// Everything needed to build a surrogate deterministically.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct ReservoirSpec {
    pub cols: usize,
    pub rows: usize,
    #[cfg_attr(feature = "serde", serde(default))]
    pub drive: DriveConfig,
    pub model: ModelParams,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub grain: Option<GrainSpec>,
    /// Random-input samples driven before the initial relaxation.
    #[cfg_attr(feature = "serde", serde(default = "default_warmup"))]
    pub warmup_samples: usize,
    #[cfg_attr(feature = "serde", serde(default))]
    pub seed: u64,
}

#[cfg(feature = "serde")]
fn default_warmup() -> usize {
    200
}

impl ReservoirSpec {
    pub fn new(cols: usize, rows: usize, model: ModelParams) -> Self {
        Self {
            cols,
            rows,
            drive: DriveConfig::default(),
            model,
            grain: None,
            warmup_samples: 200,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_drive(mut self, drive: DriveConfig) -> Self {
        self.drive = drive;
        self
    }

    pub fn with_grain(mut self, grain: GrainSpec) -> Self {
        self.grain = Some(grain);
        self
    }

    pub fn with_warmup(mut self, samples: usize) -> Self {
        self.warmup_samples = samples;
        self
    }

    pub fn model_name(&self) -> &'static str {
        match self.model {
            ModelParams::TanhLattice(_) => "tanh_lattice",
            ModelParams::PinnedParticles(_) => "pinned_particles",
            ModelParams::DelayLine => "delay_line",
            ModelParams::LtiFilterBank(_) => "lti_filter_bank",
            ModelParams::PolynomialBank(_) => "polynomial_bank",
        }
    }

    fn grain_map(&self, width: usize, height: usize, default_size: f64) -> Result<Option<GrainMap>> {
        match self.grain {
            Some(g) => voronoi_grains(width, height, g.mean_grain_size, g.variance_fraction, self.seed)
                .map(Some),
            None if default_size > 0.0 => voronoi_grains(width, height, default_size, 0.0, self.seed).map(Some),
            None => Ok(None),
        }
    }

    /// Builds the surrogate in its initial (not yet relaxed) state.
    pub fn build(&self) -> Result<Surrogate> {
        if self.cols == 0 || self.rows == 0 {
            return Err(Error::param("grid", "cols and rows must be at least 1"));
        }
        self.drive.validate()?;
        Ok(match &self.model {
            ModelParams::TanhLattice(p) => {
                let grains = self.grain_map(self.cols, self.rows, 0.0)?;
                Surrogate::TanhLattice(TanhLattice::new(self.cols, self.rows, self.drive, p, grains, self.seed)?)
            }
            ModelParams::PinnedParticles(p) => {
                p.validate()?;
                let w = libm::round(self.cols as f64 * p.cell_size) as usize;
                let h = libm::round(self.rows as f64 * p.cell_size) as usize;
                let grains = self
                    .grain_map(w, h, p.cell_size)?
                    .expect("particle model always has a grain map");
                Surrogate::PinnedParticles(PinnedParticles::new(
                    self.cols, self.rows, self.drive, p, grains, self.seed,
                )?)
            }
            ModelParams::DelayLine => Surrogate::DelayLine(DelayLine::new(self.cols, self.rows, self.drive)?),
            ModelParams::LtiFilterBank(p) => {
                Surrogate::LtiFilterBank(LtiFilterBank::new(self.cols, self.rows, self.drive, p)?)
            }
            ModelParams::PolynomialBank(p) => Surrogate::PolynomialBank(PolynomialBank::new(
                self.cols, self.rows, self.drive, p, self.seed,
            )?),
        })
    }
}
