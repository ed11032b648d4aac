use alloc::vec::Vec;

use crate::{Error, Result, SpatialLayout};

/// For each node, the ids of all nodes within the threshold distance
/// (the node itself included), in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodIndex {
    pub members: Vec<Vec<usize>>,
    pub threshold_distance: f64,
}

impl NeighborhoodIndex {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn of(&self, node: usize) -> &[usize] {
        &self.members[node]
    }

    pub fn largest(&self) -> usize {
        self.members.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// `m ∈ γ_n` iff `distance(n, m) ≤ threshold_distance` (with a relative
/// slack of 1e-12 against rounding in the positions).
pub fn build_neighborhoods(layout: &SpatialLayout, threshold_distance: f64) -> Result<NeighborhoodIndex> {
    if !(threshold_distance >= 0.0) {
        return Err(Error::param("threshold_distance", "must be non-negative"));
    }
    let limit = threshold_distance * (1.0 + 1e-12);
    let n = layout.len();
    let members = (0..n)
        .map(|i| (0..n).filter(|&j| i == j || layout.distance(i, j) <= limit).collect())
        .collect();
    Ok(NeighborhoodIndex {
        members,
        threshold_distance,
    })
}
