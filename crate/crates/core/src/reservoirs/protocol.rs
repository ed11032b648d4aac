use alloc::vec::Vec;

use super::Reservoir;
use crate::matrix::Matrix;
use crate::rng::Prng;
use crate::{Error, ReadoutMatrix, Result};

/// Any state component beyond this magnitude aborts a drive.
pub const OVERFLOW_GUARD: f64 = 1e6;

fn max_abs(state: &[f64]) -> f64 {
    state.iter().fold(0.0f64, |m, v| {
        if v.is_finite() {
            m.max(libm::fabs(*v))
        } else {
            f64::INFINITY
        }
    })
}

/// Feeds `u` as a step function (each sample held for `1 / time_scale`) and
/// records one snapshot at the end of every sample.
pub fn drive(reservoir: &mut impl Reservoir, u: &[f64]) -> Result<ReadoutMatrix> {
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("drive input"));
    }
    let per_sample = reservoir.steps_per_sample()?;
    let nodes = reservoir.layout().len();
    let mut data = Vec::with_capacity(u.len() * nodes);
    for (t, &value) in u.iter().enumerate() {
        for _ in 0..per_sample {
            reservoir.step(value);
        }
        let peak = max_abs(reservoir.state());
        if peak > OVERFLOW_GUARD {
            return Err(Error::Unstable { step: t, value: peak });
        }
        data.extend(reservoir.snapshot());
    }
    let dt = reservoir.drive_config().hold_time();
    ReadoutMatrix::new(
        Matrix::from_vec(u.len(), nodes, data)?,
        reservoir.layout().clone(),
        dt,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxReport {
    pub steps: usize,
    /// Largest per-step state change at the last step.
    pub residual: f64,
    pub converged: bool,
}

/// Integrates with zero input until the largest per-step state change drops
/// below `tolerance`, or `max_steps` is reached (reported, not an error).
///
/// Once converged, integration continues for up to [`POLISH_STEPS`] more
/// steps while the state still changes at all, so that a floating-point
/// fixed point is reached whenever the dynamics have one. Driving a polished
/// state with zero input then leaves it bit-identical.
pub fn relax(reservoir: &mut impl Reservoir, tolerance: f64, max_steps: usize) -> RelaxReport {
    let mut previous = reservoir.state().to_vec();
    let mut residual = f64::INFINITY;
    let mut converged_at = None;
    let mut step = 0;
    while step < max_steps {
        step += 1;
        reservoir.step(0.0);
        let state = reservoir.state();
        residual = state
            .iter()
            .zip(&previous)
            .fold(0.0f64, |m, (a, b)| m.max(libm::fabs(a - b)));
        if converged_at.is_none() && residual < tolerance {
            converged_at = Some(step);
        }
        if let Some(at) = converged_at {
            if residual == 0.0 || step - at >= POLISH_STEPS {
                break;
            }
        }
        previous.clear();
        previous.extend_from_slice(state);
    }
    RelaxReport {
        steps: step,
        residual,
        converged: converged_at.is_some(),
    }
}

/// Extra zero-input steps allowed after convergence to settle onto an exact
/// fixed point.
pub const POLISH_STEPS: usize = 20_000;

/// Default relaxation tolerance and step budget.
pub const RELAX_TOLERANCE: f64 = 1e-9;
pub const RELAX_MAX_STEPS: usize = 100_000;

/// Drives `samples` uniform random inputs on `[-1, 1]` and discards the
/// readouts.
pub fn warm_up(reservoir: &mut impl Reservoir, samples: usize, seed: u64) -> Result<()> {
    let mut rng = Prng::derive(seed, 4);
    let u: Vec<f64> = (0..samples).map(|_| rng.uniform(-1.0, 1.0)).collect();
    drive(reservoir, &u).map(|_| ())
}

/// Warm-up followed by relaxation to a (meta)stable state.
pub fn prepare(reservoir: &mut impl Reservoir, warmup_samples: usize, seed: u64) -> Result<RelaxReport> {
    warm_up(reservoir, warmup_samples, seed)?;
    Ok(relax(reservoir, RELAX_TOLERANCE, RELAX_MAX_STEPS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reservoirs::{DelayLine, DriveConfig};

    #[test]
    fn overflow_guard_aborts_drive() {
        let cfg = DriveConfig {
            input_gain: 1e9,
            ..DriveConfig::default()
        };
        let mut r = DelayLine::new(2, 1, cfg).unwrap();
        assert!(matches!(
            drive(&mut r, &[1e-6, 1.0, 0.0]),
            Err(Error::Unstable { step: 1, .. })
        ));
    }

    #[test]
    fn non_integer_hold_rejected() {
        let cfg = DriveConfig {
            time_scale: 0.4,
            ..DriveConfig::default()
        };
        let mut r = DelayLine::new(2, 1, cfg).unwrap();
        assert!(drive(&mut r, &[1.0]).is_err());
    }

    #[test]
    fn slower_time_scale_holds_input_longer() {
        let cfg = DriveConfig {
            time_scale: 0.5,
            ..DriveConfig::default()
        };
        let mut r = DelayLine::new(4, 1, cfg).unwrap();
        let out = drive(&mut r, &[1.0, 2.0, 3.0]).unwrap();
        // two shift steps per sample
        assert_eq!(out.data().row(2), &[3.0, 2.0, 2.0, 1.0]);
        assert_eq!(out.dt(), 2.0);
    }

    #[test]
    fn relax_reports_non_convergence() {
        let mut r = DelayLine::new(50, 1, DriveConfig::default()).unwrap();
        drive(&mut r, &[1.0]).unwrap();
        let rep = relax(&mut r, 1e-9, 10);
        assert!(!rep.converged);
        assert_eq!(rep.steps, 10);
    }
}
