use alloc::vec::Vec;

use super::{DriveConfig, GrainMap, ParticleParams, Reservoir};
use crate::rng::Prng;
use crate::{Error, Result, SpatialLayout};

/// Wells further than this many widths away are ignored.
const WELL_CUTOFF: f64 = 8.0;
/// Sub-samples per readout cell edge for the area average.
const CELL_SAMPLES: usize = 4;

/// Overdamped particles in a landscape of Gaussian pinning wells, one well
/// per grain site with depth scaled by the grain multiplier:
///
/// `r ← r + dt·(b·u·d̂ − ∇V(r))`, `V(r) = −Σ_j D_j exp(−|r − s_j|² / 2σ²)`
///
/// Particles are reflected at the domain boundary. The readout of a cell is
/// the area mean of a Gaussian-smoothed particle density.
#[derive(Debug, Clone)]
pub struct PinnedParticles {
    layout: SpatialLayout,
    drive: DriveConfig,
    grains: GrainMap,
    depths: Vec<f64>,
    width: f64,
    readout_width: f64,
    cell_size: f64,
    cols: usize,
    rows: usize,
    extent: [f64; 2],
    dt: f64,
    /// Flattened `[x0, y0, x1, y1, …]`.
    positions: Vec<f64>,
    reflections: usize,
}

impl PinnedParticles {
    pub fn new(
        cols: usize,
        rows: usize,
        drive: DriveConfig,
        params: &ParticleParams,
        grains: GrainMap,
        seed: u64,
    ) -> Result<Self> {
        drive.validate()?;
        params.validate()?;
        let layout = SpatialLayout::grid(cols, rows, params.cell_size)?;
        let extent = [cols as f64 * params.cell_size, rows as f64 * params.cell_size];
        if (grains.width as f64 - extent[0]).abs() > 0.5 || (grains.height as f64 - extent[1]).abs() > 0.5 {
            return Err(Error::param(
                "grain",
                "grain grid must cover the particle domain (cols·cell_size × rows·cell_size)",
            ));
        }
        if params.particle_count > grains.sites.len() {
            return Err(Error::param(
                "particle_count",
                alloc::format!("at most one particle per pinning site ({} sites)", grains.sites.len()),
            ));
        }
        let depths: Vec<f64> = grains.multipliers.iter().map(|m| params.well_depth * m).collect();
        let stiffest = depths.iter().copied().fold(0.0, f64::max) / (params.well_width * params.well_width);
        let dt_limit = 0.1 / stiffest;
        let hold = drive.hold_time();
        let dt_max = match params.dt {
            Some(dt) if dt > dt_limit * (1.0 + 1e-12) => {
                return Err(Error::param(
                    "dt",
                    alloc::format!("must not exceed 0.1 of the fastest well time constant ({dt_limit})"),
                ))
            }
            Some(dt) => dt,
            None => dt_limit,
        };
        let substeps = libm::ceil(hold / dt_max - 1e-9).max(1.0);
        let dt = hold / substeps;

        let mut order: Vec<usize> = (0..grains.sites.len()).collect();
        Prng::derive(seed, 3).shuffle(&mut order);
        let positions = order[..params.particle_count]
            .iter()
            .flat_map(|&j| grains.sites[j])
            .collect();
        Ok(Self {
            layout,
            drive,
            depths,
            width: params.well_width,
            readout_width: params.readout_width.unwrap_or(0.5 * params.cell_size),
            cell_size: params.cell_size,
            cols,
            rows,
            extent,
            dt,
            positions,
            reflections: 0,
            grains,
        })
    }

    pub fn grains(&self) -> &GrainMap {
        &self.grains
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn particle_positions(&self) -> Vec<[f64; 2]> {
        self.positions.chunks_exact(2).map(|p| [p[0], p[1]]).collect()
    }

    pub fn reflections(&self) -> usize {
        self.reflections
    }

    /// Smallest drive force that can pull a particle out of the well it
    /// currently occupies, treating wells as isolated: `min D_j e^{-1/2} / σ`
    /// over the wells nearest to each particle.
    pub fn hop_threshold(&self) -> f64 {
        let shallowest = self
            .positions
            .chunks_exact(2)
            .map(|p| {
                let nearest = self
                    .grains
                    .sites
                    .iter()
                    .map(|s| (p[0] - s[0]) * (p[0] - s[0]) + (p[1] - s[1]) * (p[1] - s[1]))
                    .enumerate()
                    .fold((0, f64::INFINITY), |a, (j, d)| if d < a.1 { (j, d) } else { a })
                    .0;
                self.depths[nearest]
            })
            .fold(f64::INFINITY, f64::min);
        shallowest * libm::exp(-0.5) / self.width
    }

    /// Pinning potential at `p`.
    pub fn potential(&self, p: [f64; 2]) -> f64 {
        let inv = 1.0 / (2.0 * self.width * self.width);
        self.grains
            .sites
            .iter()
            .zip(&self.depths)
            .map(|(s, d)| {
                let r2 = (p[0] - s[0]) * (p[0] - s[0]) + (p[1] - s[1]) * (p[1] - s[1]);
                -d * libm::exp(-r2 * inv)
            })
            .sum()
    }

    /// `∇V` at `p`.
    pub fn potential_gradient(&self, p: [f64; 2]) -> [f64; 2] {
        let s2 = self.width * self.width;
        let cutoff2 = WELL_CUTOFF * WELL_CUTOFF * s2;
        let mut g = [0.0; 2];
        for (s, d) in self.grains.sites.iter().zip(&self.depths) {
            let dx = p[0] - s[0];
            let dy = p[1] - s[1];
            let r2 = dx * dx + dy * dy;
            if r2 > cutoff2 {
                continue;
            }
            let f = d * libm::exp(-r2 / (2.0 * s2)) / s2;
            g[0] += f * dx;
            g[1] += f * dy;
        }
        g
    }

    fn reflect(&mut self, value: f64, axis: usize) -> f64 {
        let hi = self.extent[axis];
        let mut v = value;
        if v < 0.0 {
            v = -v;
            self.reflections += 1;
        }
        if v > hi {
            v = 2.0 * hi - v;
            self.reflections += 1;
        }
        v.clamp(0.0, hi)
    }
}

impl Reservoir for PinnedParticles {
    fn layout(&self) -> &SpatialLayout {
        &self.layout
    }

    fn drive_config(&self) -> &DriveConfig {
        &self.drive
    }

    fn step_duration(&self) -> f64 {
        self.dt
    }

    fn step(&mut self, u: f64) {
        let push = self.drive.input_gain * u;
        let fx = push * self.drive.direction[0];
        let fy = push * self.drive.direction[1];
        for p in 0..self.positions.len() / 2 {
            let pos = [self.positions[2 * p], self.positions[2 * p + 1]];
            let g = self.potential_gradient(pos);
            let x = pos[0] + self.dt * (fx - g[0]);
            let y = pos[1] + self.dt * (fy - g[1]);
            self.positions[2 * p] = self.reflect(x, 0);
            self.positions[2 * p + 1] = self.reflect(y, 1);
        }
    }

    fn state(&self) -> &[f64] {
        &self.positions
    }

    fn snapshot(&self) -> Vec<f64> {
        let inv = 1.0 / (2.0 * self.readout_width * self.readout_width);
        let reach2 = (WELL_CUTOFF * self.readout_width + self.cell_size) * (WELL_CUTOFF * self.readout_width + self.cell_size);
        let sub = self.cell_size / CELL_SAMPLES as f64;
        let norm = 1.0 / (CELL_SAMPLES * CELL_SAMPLES) as f64;
        let mut out = Vec::with_capacity(self.cols * self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let cx = (c as f64 + 0.5) * self.cell_size;
                let cy = (r as f64 + 0.5) * self.cell_size;
                let mut acc = 0.0;
                for p in self.positions.chunks_exact(2) {
                    if (p[0] - cx) * (p[0] - cx) + (p[1] - cy) * (p[1] - cy) > reach2 {
                        continue;
                    }
                    for a in 0..CELL_SAMPLES {
                        let sx = c as f64 * self.cell_size + (a as f64 + 0.5) * sub;
                        for b in 0..CELL_SAMPLES {
                            let sy = r as f64 * self.cell_size + (b as f64 + 0.5) * sub;
                            let d2 = (p[0] - sx) * (p[0] - sx) + (p[1] - sy) * (p[1] - sy);
                            acc += libm::exp(-d2 * inv);
                        }
                    }
                }
                out.push(acc * norm);
            }
        }
        out
    }
}
