use alloc::vec::Vec;

use super::{delay_embed, Diagnostic, MetricConfig, MetricKind, MetricMap, MetricParams};
use crate::estimators::{CenteredDesign, FeatureSpec, FitOptions};
use crate::series::train_len;
use crate::{r_squared, Error, ReadoutMatrix, Result};

/// `NL_n = 1 − R²` of the held-out prediction of node `n` from the input's
/// delay embedding `[u(t), …, u(t−k)]`.
///
/// All nodes share one factored design, so the per-node work is a single
/// back-substitution.
pub fn nonlinearity_map(u: &[f64], readouts: &ReadoutMatrix, config: &MetricConfig) -> Result<MetricMap> {
    let t_total = readouts.steps();
    if u.len() != t_total {
        return Err(Error::LengthMismatch {
            what: "input samples vs readout rows",
            left: u.len(),
            right: t_total,
        });
    }
    let k = config.k;
    let start = config.first_row();
    if start >= t_total {
        return Err(Error::param(
            "washout",
            "washout and k leave no rows to evaluate",
        ));
    }
    let embedded = delay_embed(u, k)?;
    let rows = t_total - start;
    let cut = train_len(rows, config.train_fraction)?;
    let offset = start - k;
    let train = embedded.row_range(offset, offset + cut);
    let test = embedded.row_range(offset + cut, offset + rows);
    let design = CenteredDesign::new(&train, FitOptions { ridge: config.ridge })?
        .with_feature_spec(FeatureSpec::DelayEmbedding { k });

    let nodes: Vec<usize> = (0..readouts.nodes()).collect();
    let data = readouts.data();
    let per_node = config.execution.map(&nodes, |&n| -> Result<(f64, bool)> {
        let y: Vec<f64> = (start..t_total).map(|t| data.get(t, n)).collect();
        if y.iter().all(|&v| v == y[0]) {
            return Ok((0.0, true));
        }
        let est = design.fit(&y[..cut])?;
        let pred = est.predict(&test);
        let q = r_squared(&pred, &y[cut..])?;
        Ok((1.0 - q, false))
    });

    let mut values = Vec::with_capacity(nodes.len());
    let mut diagnostics = Vec::new();
    for (n, r) in per_node.into_iter().enumerate() {
        let (nl, constant) = r?;
        if constant {
            diagnostics.push(Diagnostic::ConstantTrace { node: n });
        }
        values.push(nl);
    }
    Ok(MetricMap {
        kind: MetricKind::Nonlinearity,
        values,
        layout: readouts.layout().clone(),
        params: MetricParams {
            k: Some(k),
            threshold_distance: None,
            washout: config.washout,
        },
        diagnostics,
    })
}
