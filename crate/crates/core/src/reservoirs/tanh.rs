use alloc::vec::Vec;

use super::{DriveConfig, GrainMap, Reservoir, TanhParams};
use crate::rng::Prng;
use crate::{Error, Result, SpatialLayout};

/// Leaky tanh units on a grid with nearest-neighbour coupling:
///
/// `x ← (1−α) x + α tanh(g ∘ (c·Σ_{4-nbrs} x + b·u·m))`
///
/// `g` is the per-node gain field (uniform or a gradient along the drive
/// direction, optionally scaled by grain multipliers), `m` the input mask
/// `cos(θ_i − φ)` of a random local orientation `θ_i` against the drive
/// direction `φ`. Readout is `x` itself.
#[derive(Debug, Clone)]
pub struct TanhLattice {
    layout: SpatialLayout,
    drive: DriveConfig,
    leak: f64,
    coupling: f64,
    gains: Vec<f64>,
    mask: Vec<f64>,
    neighbors: Vec<[usize; 4]>,
    neighbor_count: Vec<u8>,
    x: Vec<f64>,
    scratch: Vec<f64>,
    grains: Option<GrainMap>,
}

impl TanhLattice {
    pub fn new(
        cols: usize,
        rows: usize,
        drive: DriveConfig,
        params: &TanhParams,
        grains: Option<GrainMap>,
        seed: u64,
    ) -> Result<Self> {
        drive.validate()?;
        params.validate()?;
        let layout = SpatialLayout::grid(cols, rows, 1.0)?;
        if let Some(g) = &grains {
            if g.width != cols || g.height != rows {
                return Err(Error::param("grain", "grain grid must match the lattice dimensions"));
            }
        }
        let n = cols * rows;
        let [dx, dy] = drive.direction;
        let projection: Vec<f64> = layout.positions().iter().map(|p| p[0] * dx + p[1] * dy).collect();
        let lo = projection.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = projection.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let gains = (0..n)
            .map(|i| {
                let s = if hi > lo { (projection[i] - lo) / (hi - lo) } else { 0.0 };
                let base = params.gain_low + (params.gain_high - params.gain_low) * s;
                let m = grains.as_ref().map_or(1.0, |g| g.multiplier_at(i % cols, i / cols));
                base * m
            })
            .collect();
        let phi = libm::atan2(dy, dx);
        let mut rng = Prng::derive(seed, 2);
        let mask = (0..n)
            .map(|_| libm::cos(rng.uniform(0.0, 2.0 * core::f64::consts::PI) - phi))
            .collect();
        let mut neighbors = alloc::vec![[0usize; 4]; n];
        let mut neighbor_count = alloc::vec![0u8; n];
        for r in 0..rows {
            for c in 0..cols {
                let i = r * cols + c;
                let mut push = |j: usize| {
                    neighbors[i][neighbor_count[i] as usize] = j;
                    neighbor_count[i] += 1;
                };
                if c > 0 {
                    push(i - 1);
                }
                if c + 1 < cols {
                    push(i + 1);
                }
                if r > 0 {
                    push(i - cols);
                }
                if r + 1 < rows {
                    push(i + cols);
                }
            }
        }
        Ok(Self {
            layout,
            drive,
            leak: params.leak,
            coupling: params.coupling,
            gains,
            mask,
            neighbors,
            neighbor_count,
            x: alloc::vec![0.0; n],
            scratch: alloc::vec![0.0; n],
            grains,
        })
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn input_mask(&self) -> &[f64] {
        &self.mask
    }

    pub fn grains(&self) -> Option<&GrainMap> {
        self.grains.as_ref()
    }

    /// Overwrites the state (for echo-state checks).
    pub fn set_state(&mut self, x: &[f64]) {
        self.x.copy_from_slice(x);
    }
}

impl Reservoir for TanhLattice {
    fn layout(&self) -> &SpatialLayout {
        &self.layout
    }

    fn drive_config(&self) -> &DriveConfig {
        &self.drive
    }

    fn step_duration(&self) -> f64 {
        1.0
    }

    fn step(&mut self, u: f64) {
        let drive = self.drive.input_gain * u;
        for i in 0..self.x.len() {
            let coupled: f64 = self.neighbors[i][..self.neighbor_count[i] as usize]
                .iter()
                .map(|&j| self.x[j])
                .sum();
            let pre = self.coupling * coupled + drive * self.mask[i];
            let next = (1.0 - self.leak) * self.x[i] + self.leak * libm::tanh(self.gains[i] * pre);
            // Rounding leaves spurious fixed points among the subnormals.
            self.scratch[i] = if next.abs() < f64::MIN_POSITIVE { 0.0 } else { next };
        }
        core::mem::swap(&mut self.x, &mut self.scratch);
    }

    fn state(&self) -> &[f64] {
        &self.x
    }

    fn snapshot(&self) -> Vec<f64> {
        self.x.clone()
    }
}
