use alloc::vec::Vec;

use super::{MetricKind, MetricMap, MetricParams};
use crate::{Error, Result, SpatialLayout};

/// `|final_n − initial_n|` per node: zero for a node that returned exactly
/// to its relaxed state.
pub fn stability_map(initial: &[f64], final_state: &[f64], layout: &SpatialLayout) -> Result<MetricMap> {
    if initial.len() != final_state.len() {
        return Err(Error::LengthMismatch {
            what: "initial vs final snapshot",
            left: initial.len(),
            right: final_state.len(),
        });
    }
    if initial.len() != layout.len() {
        return Err(Error::LengthMismatch {
            what: "snapshot vs layout nodes",
            left: initial.len(),
            right: layout.len(),
        });
    }
    let values: Vec<f64> = initial
        .iter()
        .zip(final_state)
        .map(|(a, b)| libm::fabs(b - a))
        .collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("snapshots"));
    }
    Ok(MetricMap {
        kind: MetricKind::Stability,
        values,
        layout: layout.clone(),
        params: MetricParams::default(),
        diagnostics: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_states_are_stable() {
        let l = SpatialLayout::grid(2, 2, 1.0).unwrap();
        let s = [0.1, -0.2, 0.3, 0.0];
        let m = stability_map(&s, &s, &l).unwrap();
        assert!(m.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn absolute_difference() {
        let l = SpatialLayout::grid(2, 1, 1.0).unwrap();
        let m = stability_map(&[1.0, 0.0], &[0.5, -2.0], &l).unwrap();
        assert_eq!(m.values, alloc::vec![0.5, 2.0]);
    }

    #[test]
    fn shape_mismatch() {
        let l = SpatialLayout::grid(2, 1, 1.0).unwrap();
        assert!(stability_map(&[1.0], &[1.0, 2.0], &l).is_err());
        assert!(stability_map(&[1.0], &[1.0], &l).is_err());
    }
}
