use alloc::string::String;
use alloc::vec::Vec;

use crate::rng::{self, Prng};
use crate::{Error, Result};

/// Where a series came from. Echoed into CSV headers.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub generator: String,
    pub seed: Option<u64>,
    pub params: Vec<(String, f64)>,
}

impl Provenance {
    pub fn new(generator: impl Into<String>) -> Self {
        Self {
            generator: generator.into(),
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_param(mut self, name: impl Into<String>, value: f64) -> Self {
        self.params.push((name.into(), value));
        self
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Uniformly sampled scalar sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    dt: f64,
    t0: f64,
    pub meta: Provenance,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, dt: f64, t0: f64, meta: Provenance) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::param("values", "a series needs at least one sample"));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::param("dt", "sampling interval must be positive and finite"));
        }
        if !t0.is_finite() {
            return Err(Error::NonFinite("t0"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("series values"));
        }
        Ok(Self {
            values,
            dt,
            t0,
            meta,
        })
    }

    /// Unit-spaced series starting at `t = 0`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(values, 1.0, 0.0, Provenance::new("literal"))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn time(&self, index: usize) -> f64 {
        self.t0 + index as f64 * self.dt
    }

    /// Affine map of the values onto `[low, high]`. A constant series maps to
    /// the interval midpoint.
    pub fn normalized(&self, low: f64, high: f64) -> Result<Self> {
        if !(low < high) {
            return Err(Error::InvalidInterval { low, high });
        }
        let (min, max) = self
            .values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(v), b.max(v))
            });
        let values = if max > min {
            self.values
                .iter()
                .map(|v| low + (high - low) * (v - min) / (max - min))
                .collect()
        } else {
            alloc::vec![0.5 * (low + high); self.values.len()]
        };
        let meta = self
            .meta
            .clone()
            .with_param("normalized_low", low)
            .with_param("normalized_high", high);
        Self::new(values, self.dt, self.t0, meta)
    }

    /// Drops the first `count` samples.
    pub fn skip(&self, count: usize) -> Result<Self> {
        if count >= self.values.len() {
            return Err(Error::param("count", "cannot skip the whole series"));
        }
        Self::new(
            self.values[count..].to_vec(),
            self.dt,
            self.time(count),
            self.meta.clone(),
        )
    }
}

/// `n` i.i.d. samples uniform on `[low, high]`.
pub fn random_signal(n: usize, low: f64, high: f64, seed: u64) -> Result<TimeSeries> {
    if n == 0 {
        return Err(Error::param("n", "signal length must be at least 1"));
    }
    if !(low < high) || !low.is_finite() || !high.is_finite() {
        return Err(Error::InvalidInterval { low, high });
    }
    let mut rng = Prng::new(seed);
    let values = (0..n).map(|_| rng.uniform(low, high)).collect();
    let meta = Provenance::new("uniform_random")
        .with_seed(seed)
        .with_param("n", n as f64)
        .with_param("low", low)
        .with_param("high", high);
    let mut series = TimeSeries::new(values, 1.0, 0.0, meta)?;
    series.meta.generator = alloc::format!("uniform_random/{}", rng::ALGORITHM);
    Ok(series)
}

/// Number of rows in the training prefix for `total` rows.
pub fn train_len(total: usize, train_fraction: f64) -> Result<usize> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::param(
            "train_fraction",
            "must lie strictly between 0 and 1",
        ));
    }
    let train = libm::floor(total as f64 * train_fraction) as usize;
    if train == 0 || train >= total {
        return Err(Error::EmptyPartition {
            train,
            test: total.saturating_sub(train),
        });
    }
    Ok(train)
}

/// A contiguous prefix/suffix split of paired rows. No shuffling.
pub type Partition<'a, F, T> = ((&'a [F], &'a [T]), (&'a [F], &'a [T]));

pub fn split_train_test<'a, F, T>(
    features: &'a [F],
    targets: &'a [T],
    train_fraction: f64,
) -> Result<Partition<'a, F, T>> {
    if features.len() != targets.len() {
        return Err(Error::LengthMismatch {
            what: "features vs targets",
            left: features.len(),
            right: targets.len(),
        });
    }
    let cut = train_len(features.len(), train_fraction)?;
    let (f_train, f_test) = features.split_at(cut);
    let (t_train, t_test) = targets.split_at(cut);
    Ok(((f_train, t_train), (f_test, t_test)))
}
