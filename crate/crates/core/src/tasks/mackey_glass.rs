use alloc::vec::Vec;

use crate::series::{Provenance, TimeSeries};
use crate::{Error, Result};

/// `dx/dt = a·x(t−τ) / (1 + x(t−τ)^n) − b·x(t)` with constant pre-history.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct MackeyGlassParams {
    pub a: f64,
    pub b: f64,
    pub n: f64,
    pub tau: f64,
    /// Integration step; must divide the unit sample interval.
    pub dt: f64,
    /// Last sampled time.
    pub t_end: f64,
    /// `x(t)` for `t ≤ 0`.
    pub history_init: f64,
    /// Samples before this time are integrated but not emitted.
    pub transient: f64,
}

impl Default for MackeyGlassParams {
    fn default() -> Self {
        Self {
            a: 0.2,
            b: 0.1,
            n: 10.0,
            tau: 23.0,
            dt: 0.1,
            t_end: 2200.0,
            history_init: 1.2,
            transient: 200.0,
        }
    }
}

impl MackeyGlassParams {
    fn validate(&self) -> Result<usize> {
        for (name, v) in [("a", self.a), ("b", self.b), ("n", self.n), ("history_init", self.history_init)] {
            if !v.is_finite() {
                return Err(Error::param(name, "must be finite"));
            }
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::param("dt", "must be positive"));
        }
        if !(self.tau >= self.dt) || !self.tau.is_finite() {
            return Err(Error::param("tau", "delay must be at least one step"));
        }
        let per_sample = 1.0 / self.dt;
        let rounded = libm::round(per_sample);
        if libm::fabs(per_sample - rounded) > 1e-9 * rounded {
            return Err(Error::param("dt", "must divide the unit sample interval"));
        }
        if !(self.transient >= 0.0) || !(self.t_end >= self.transient) {
            return Err(Error::param("t_end", "need 0 <= transient <= t_end"));
        }
        Ok(rounded as usize)
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::new("mackey_glass")
            .with_param("a", self.a)
            .with_param("b", self.b)
            .with_param("n", self.n)
            .with_param("tau", self.tau)
            .with_param("dt", self.dt)
            .with_param("t_end", self.t_end)
            .with_param("history_init", self.history_init)
            .with_param("transient", self.transient)
    }
}

/// Fixed-step RK4 on the delay equation; delayed values come from linear
/// interpolation of the stored trajectory. One sample per unit time from
/// `transient` to `t_end`.
pub fn mackey_glass(params: &MackeyGlassParams) -> Result<TimeSeries> {
    let per_sample = params.validate()?;
    let h = 1.0 / per_sample as f64;
    let first = libm::ceil(params.transient - 1e-9) as usize;
    let last = libm::floor(params.t_end + 1e-9) as usize;
    let total_steps = last * per_sample;

    let mut hist: Vec<f64> = Vec::with_capacity(total_steps + 1);
    hist.push(params.history_init);
    let delayed = |hist: &[f64], t: f64| -> f64 {
        let s = t - params.tau;
        if s <= 0.0 {
            return params.history_init;
        }
        let pos = s / h;
        let i = libm::floor(pos) as usize;
        let frac = pos - i as f64;
        if i + 1 >= hist.len() {
            return hist[hist.len() - 1];
        }
        hist[i] + frac * (hist[i + 1] - hist[i])
    };
    let rhs = |x: f64, xd: f64| params.a * xd / (1.0 + libm::pow(xd, params.n)) - params.b * x;

    for step in 0..total_steps {
        let t = step as f64 * h;
        let x = hist[step];
        let d0 = delayed(&hist, t);
        let dm = delayed(&hist, t + 0.5 * h);
        let d1 = delayed(&hist, t + h);
        let k1 = rhs(x, d0);
        let k2 = rhs(x + 0.5 * h * k1, dm);
        let k3 = rhs(x + 0.5 * h * k2, dm);
        let k4 = rhs(x + h * k3, d1);
        hist.push(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }

    let values: Vec<f64> = (first..=last).map(|s| hist[s * per_sample]).collect();
    TimeSeries::new(values, 1.0, first as f64, params.provenance())
}
