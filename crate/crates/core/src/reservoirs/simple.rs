//! Reference surrogates with known metric values: a pure delay line
//! (memory without nonlinearity at the metric level), a bank of first-order
//! linear filters, and a bank of memoryless even polynomials.

use alloc::vec::Vec;

use super::{DriveConfig, FilterParams, PolynomialParams, Reservoir};
use crate::rng::Prng;
use crate::{Error, Result, SpatialLayout};

/// Shift register: node `i` reads `b·u(t − i − 1)`.
#[derive(Debug, Clone)]
pub struct DelayLine {
    layout: SpatialLayout,
    drive: DriveConfig,
    /// `[pending input, node 0, node 1, …]`
    buffer: Vec<f64>,
}

impl DelayLine {
    pub fn new(cols: usize, rows: usize, drive: DriveConfig) -> Result<Self> {
        drive.validate()?;
        let layout = SpatialLayout::grid(cols, rows, 1.0)?;
        let depth = layout.len();
        Ok(Self {
            layout,
            drive,
            buffer: alloc::vec![0.0; depth + 1],
        })
    }

    pub fn depth(&self) -> usize {
        self.buffer.len() - 1
    }
}

impl Reservoir for DelayLine {
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
        self.buffer.rotate_right(1);
        self.buffer[0] = self.drive.input_gain * u;
    }

    fn state(&self) -> &[f64] {
        &self.buffer
    }

    fn snapshot(&self) -> Vec<f64> {
        self.buffer[1..].to_vec()
    }
}

/// Independent leaky integrators `x_n ← (1−a_n) x_n + a_n·b·u` with leak
/// rates spaced geometrically over `[leak_min, leak_max]`.
#[derive(Debug, Clone)]
pub struct LtiFilterBank {
    layout: SpatialLayout,
    drive: DriveConfig,
    leaks: Vec<f64>,
    x: Vec<f64>,
}

impl LtiFilterBank {
    pub fn new(cols: usize, rows: usize, drive: DriveConfig, params: &FilterParams) -> Result<Self> {
        drive.validate()?;
        params.validate()?;
        let layout = SpatialLayout::grid(cols, rows, 1.0)?;
        let n = layout.len();
        let leaks = (0..n)
            .map(|i| {
                if n == 1 {
                    params.leak_max
                } else {
                    let s = i as f64 / (n - 1) as f64;
                    params.leak_min * libm::pow(params.leak_max / params.leak_min, s)
                }
            })
            .collect();
        Ok(Self {
            layout,
            drive,
            leaks,
            x: alloc::vec![0.0; n],
        })
    }

    pub fn leaks(&self) -> &[f64] {
        &self.leaks
    }
}

impl Reservoir for LtiFilterBank {
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
        let b = self.drive.input_gain * u;
        for (x, a) in self.x.iter_mut().zip(&self.leaks) {
            *x += a * (b - *x);
        }
    }

    fn state(&self) -> &[f64] {
        &self.x
    }

    fn snapshot(&self) -> Vec<f64> {
        self.x.clone()
    }
}

/// Memoryless nodes `y_n = Σ_{j=1..J_n} c_{n,j} (b·u)^{2j}`, with
/// `J_n = 1 + n mod (degree/2)` and seeded coefficients in `[0.2, 1]`.
///
/// Only even powers appear, so for any input distribution symmetric about
/// zero no node is linearly correlated with any input delay.
#[derive(Debug, Clone)]
pub struct PolynomialBank {
    layout: SpatialLayout,
    drive: DriveConfig,
    coefficients: Vec<Vec<f64>>,
    y: Vec<f64>,
}

impl PolynomialBank {
    pub fn new(
        cols: usize,
        rows: usize,
        drive: DriveConfig,
        params: &PolynomialParams,
        seed: u64,
    ) -> Result<Self> {
        drive.validate()?;
        if params.degree < 2 {
            return Err(Error::param("degree", "polynomial degree must be at least 2"));
        }
        let layout = SpatialLayout::grid(cols, rows, 1.0)?;
        let terms = params.degree / 2;
        let mut rng = Prng::derive(seed, 5);
        let coefficients = (0..layout.len())
            .map(|n| (0..1 + n % terms).map(|_| rng.uniform(0.2, 1.0)).collect())
            .collect();
        let n = layout.len();
        Ok(Self {
            layout,
            drive,
            coefficients,
            y: alloc::vec![0.0; n],
        })
    }
}

impl Reservoir for PolynomialBank {
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
        let v = self.drive.input_gain * u;
        let v2 = v * v;
        for (y, c) in self.y.iter_mut().zip(&self.coefficients) {
            let mut power = 1.0;
            *y = c
                .iter()
                .map(|cj| {
                    power *= v2;
                    cj * power
                })
                .sum();
        }
    }

    fn state(&self) -> &[f64] {
        &self.y
    }

    fn snapshot(&self) -> Vec<f64> {
        self.y.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reservoirs::drive;

    #[test]
    fn delay_line_shifts_input() {
        let mut d = DelayLine::new(2, 1, DriveConfig::default()).unwrap();
        let r = drive(&mut d, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r.trace(0), alloc::vec![0.0, 1.0, 2.0]);
        assert_eq!(r.trace(1), alloc::vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn filter_bank_unit_dc_gain() {
        let mut f = LtiFilterBank::new(3, 1, DriveConfig::default(), &FilterParams::default()).unwrap();
        let r = drive(&mut f, &[1.0; 200]).unwrap();
        for n in 0..3 {
            assert!((r.data().get(199, n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn polynomial_is_even_and_memoryless() {
        let mut p = PolynomialBank::new(4, 1, DriveConfig::default(), &PolynomialParams { degree: 6 }, 1).unwrap();
        let a = drive(&mut p, &[0.5, -0.5, 0.0]).unwrap();
        for n in 0..4 {
            assert_eq!(a.data().get(0, n), a.data().get(1, n));
            assert_eq!(a.data().get(2, n), 0.0);
        }
    }
}
