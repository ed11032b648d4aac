use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Diagnostic, MetricConfig, MetricKind, MetricMap, MetricParams, NeighborhoodIndex};
use crate::estimators::{CenteredDesign, FeatureSpec, FitOptions};
use crate::series::train_len;
use crate::{r_squared, Error, ReadoutMatrix, Result};

/// Held-out recall R² for delays `τ = 1..=k`, one curve per node.
///
/// For node `n` a separate estimator `û(t−τ) = c + Σ w_i γ_{n,i}(t)` is fitted
/// for every delay. Rows start at `max(washout, k)` for every `τ`, so all
/// delays are scored on the same rows. Nodes with identical neighbourhoods
/// share one factorization.
pub fn memory_curves(
    u: &[f64],
    readouts: &ReadoutMatrix,
    neighborhoods: &NeighborhoodIndex,
    config: &MetricConfig,
) -> Result<Vec<Vec<f64>>> {
    let t_total = readouts.steps();
    if u.len() != t_total {
        return Err(Error::LengthMismatch {
            what: "input samples vs readout rows",
            left: u.len(),
            right: t_total,
        });
    }
    if neighborhoods.len() != readouts.nodes() {
        return Err(Error::LengthMismatch {
            what: "neighbourhoods vs readout nodes",
            left: neighborhoods.len(),
            right: readouts.nodes(),
        });
    }
    let k = config.k;
    if k == 0 {
        return Err(Error::param(
            "k",
            "memory capacity requires k >= 1 (delays are summed from 1)",
        ));
    }
    let start = config.first_row();
    if start >= t_total {
        return Err(Error::param("washout", "washout and k leave no rows to evaluate"));
    }
    let rows = t_total - start;
    let cut = train_len(rows, config.train_fraction)?;
    if config.ridge == 0.0 && neighborhoods.largest() + 1 > cut {
        return Err(Error::Underdetermined {
            rows: cut,
            params: neighborhoods.largest() + 1,
            hint: "neighbourhood exceeds the training rows; raise T or lower threshold_distance",
        });
    }

    let mut unique: BTreeMap<&[usize], usize> = BTreeMap::new();
    let mut groups: Vec<&[usize]> = Vec::new();
    let group_of: Vec<usize> = neighborhoods
        .members
        .iter()
        .map(|m| {
            *unique.entry(m.as_slice()).or_insert_with(|| {
                groups.push(m.as_slice());
                groups.len() - 1
            })
        })
        .collect();

    let data = readouts.data();
    let targets: Vec<Vec<f64>> = (1..=k)
        .map(|tau| (start..t_total).map(|t| u[t - tau]).collect())
        .collect();

    let per_group = config.execution.map(&groups, |members| -> Result<Vec<f64>> {
        let features = data.row_range(start, t_total).select_columns(members);
        let train = features.row_range(0, cut);
        let test = features.row_range(cut, rows);
        let design = CenteredDesign::new(&train, FitOptions { ridge: config.ridge })?
            .with_feature_spec(FeatureSpec::Neighborhood {
                members: members.to_vec(),
            });
        targets
            .iter()
            .map(|y| {
                let est = design.fit(&y[..cut])?;
                r_squared(&est.predict(&test), &y[cut..])
            })
            .collect()
    });
    let per_group: Vec<Vec<f64>> = per_group.into_iter().collect::<Result<_>>()?;
    Ok(group_of.into_iter().map(|g| per_group[g].clone()).collect())
}

/// `MC_n = Σ_{τ=1..k} R²[u(t−τ), û_n(t−τ)]`.
pub fn memory_capacity_map(
    u: &[f64],
    readouts: &ReadoutMatrix,
    neighborhoods: &NeighborhoodIndex,
    config: &MetricConfig,
) -> Result<MetricMap> {
    let curves = memory_curves(u, readouts, neighborhoods, config)?;
    let mut diagnostics = Vec::new();
    let values = curves
        .iter()
        .enumerate()
        .map(|(n, curve)| {
            let tail = *curve.last().unwrap_or(&0.0);
            if tail > 0.1 {
                diagnostics.push(Diagnostic::MemoryBeyondCutoff { node: n, r2_at_k: tail });
            }
            curve.iter().sum::<f64>()
        })
        .collect();
    Ok(MetricMap {
        kind: MetricKind::MemoryCapacity,
        values,
        layout: readouts.layout().clone(),
        params: MetricParams {
            k: Some(config.k),
            threshold_distance: Some(neighborhoods.threshold_distance),
            washout: config.washout,
        },
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::build_neighborhoods;
    use crate::{random_signal, SpatialLayout};

    fn cfg(k: usize) -> MetricConfig {
        MetricConfig {
            k,
            washout: 500,
            ..MetricConfig::default()
        }
    }

    /// Brute-force delay line: node `i` holds `u(t − i − 1)`.
    fn delay_traces(u: &[f64], depth: usize) -> Vec<Vec<f64>> {
        (0..depth)
            .map(|i| {
                (0..u.len())
                    .map(|t| if t > i { u[t - i - 1] } else { 0.0 })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn delay_line_recalls_its_depth() {
        let u = random_signal(1500, -1.0, 1.0, 5).unwrap();
        let layout = SpatialLayout::grid(8, 1, 1.0).unwrap();
        let r = ReadoutMatrix::from_traces(&delay_traces(u.values(), 8), layout.clone()).unwrap();
        let nb = build_neighborhoods(&layout, layout.diameter()).unwrap();
        let map = memory_capacity_map(u.values(), &r, &nb, &cfg(12)).unwrap();
        for v in &map.values {
            assert!((v - 8.0).abs() < 0.25, "{v}");
        }
        let curve = &memory_curves(u.values(), &r, &nb, &cfg(12)).unwrap()[0];
        for r2 in &curve[..8] {
            assert!((r2 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn memoryless_bank_has_no_capacity() {
        let u = random_signal(1500, -1.0, 1.0, 6).unwrap();
        let traces: Vec<Vec<f64>> = (1..=4)
            .map(|p| u.values().iter().map(|v| libm::pow(*v, p as f64)).collect())
            .collect();
        let layout = SpatialLayout::grid(4, 1, 1.0).unwrap();
        let r = ReadoutMatrix::from_traces(&traces, layout.clone()).unwrap();
        let nb = build_neighborhoods(&layout, 1.0).unwrap();
        let map = memory_capacity_map(u.values(), &r, &nb, &cfg(10)).unwrap();
        for v in &map.values {
            assert!(*v < 0.5 && *v >= 0.0, "{v}");
        }
    }

    #[test]
    fn zero_k_rejected() {
        let u = random_signal(100, -1.0, 1.0, 1).unwrap();
        let layout = SpatialLayout::grid(1, 1, 1.0).unwrap();
        let r = ReadoutMatrix::from_traces(&[u.values().to_vec()], layout.clone()).unwrap();
        let nb = build_neighborhoods(&layout, 0.0).unwrap();
        let c = MetricConfig { k: 0, washout: 0, ..MetricConfig::default() };
        assert!(matches!(
            memory_capacity_map(u.values(), &r, &nb, &c),
            Err(Error::InvalidParameter { name: "k", .. })
        ));
    }

    #[test]
    fn oversized_neighbourhood_rejected() {
        let u = random_signal(60, -1.0, 1.0, 1).unwrap();
        let layout = SpatialLayout::grid(8, 8, 1.0).unwrap();
        let traces = alloc::vec![u.values().to_vec(); 64];
        let r = ReadoutMatrix::from_traces(&traces, layout.clone()).unwrap();
        let nb = build_neighborhoods(&layout, 100.0).unwrap();
        let c = MetricConfig { k: 2, washout: 0, ..MetricConfig::default() };
        assert!(matches!(
            memory_capacity_map(u.values(), &r, &nb, &c),
            Err(Error::Underdetermined { .. })
        ));
    }
}
