use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DistanceMetric {
    #[default]
    Euclidean,
    Chebyshev,
}

impl DistanceMetric {
    pub fn distance(self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let dx = a[0] - b[0];
        let dy = a[1] - b[1];
        match self {
            DistanceMetric::Euclidean => libm::sqrt(dx * dx + dy * dy),
            DistanceMetric::Chebyshev => libm::fabs(dx).max(libm::fabs(dy)),
        }
    }
}

/// Readout node positions. Node ids are the indices `0..len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialLayout {
    positions: Vec<[f64; 2]>,
    metric: DistanceMetric,
}

/// A rectangular arrangement recovered from node positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridShape {
    pub cols: usize,
    pub rows: usize,
    /// Row-major cell index (`row * cols + col`) of each node.
    pub cell_of_node: Vec<usize>,
}

impl SpatialLayout {
    pub fn new(positions: Vec<[f64; 2]>, metric: DistanceMetric) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::param("layout", "at least one node is required"));
        }
        if positions.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("node positions"));
        }
        Ok(Self { positions, metric })
    }

    /// `cols × rows` nodes at cell centres of a grid with the given pitch,
    /// numbered row-major.
    pub fn grid(cols: usize, rows: usize, pitch: f64) -> Result<Self> {
        if cols == 0 || rows == 0 {
            return Err(Error::param("grid", "dimensions must be at least 1"));
        }
        if !(pitch > 0.0) || !pitch.is_finite() {
            return Err(Error::param("pitch", "must be positive"));
        }
        let positions = (0..rows)
            .flat_map(|r| {
                (0..cols).map(move |c| [(c as f64 + 0.5) * pitch, (r as f64 + 0.5) * pitch])
            })
            .collect();
        Self::new(positions, DistanceMetric::Euclidean)
    }

    pub fn with_metric(mut self, metric: DistanceMetric) -> Self {
        self.metric = metric;
        self
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn position(&self, node: usize) -> [f64; 2] {
        self.positions[node]
    }

    pub fn metric(&self) -> DistanceMetric {
        self.metric
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.metric.distance(self.positions[a], self.positions[b])
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut d: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                d = d.max(self.distance(i, j));
            }
        }
        d
    }

    /// Smallest non-zero nearest-neighbour distance (the readout pitch), or
    /// `1.0` for a single node.
    pub fn pitch(&self) -> f64 {
        let n = self.len();
        let mut p = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                let d = self.distance(i, j);
                if d > 0.0 {
                    p = p.min(d);
                }
            }
        }
        if p.is_finite() {
            p
        } else {
            1.0
        }
    }

    /// Bounding box `(min, max)`.
    pub fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in &self.positions {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        (lo, hi)
    }

    /// Recovers a rectangular grid if every (distinct x, distinct y) pair is
    /// occupied by exactly one node.
    pub fn grid_shape(&self) -> Option<GridShape> {
        let xs = distinct_sorted(self.positions.iter().map(|p| p[0]));
        let ys = distinct_sorted(self.positions.iter().map(|p| p[1]));
        let (cols, rows) = (xs.len(), ys.len());
        if cols * rows != self.len() {
            return None;
        }
        let mut seen = alloc::vec![false; cols * rows];
        let mut cell_of_node = Vec::with_capacity(self.len());
        for p in &self.positions {
            let c = xs.iter().position(|&x| x == p[0])?;
            let r = ys.iter().position(|&y| y == p[1])?;
            let cell = r * cols + c;
            if seen[cell] {
                return None;
            }
            seen[cell] = true;
            cell_of_node.push(cell);
        }
        Some(GridShape {
            cols,
            rows,
            cell_of_node,
        })
    }

    /// Layout restricted to (and renumbered by) the given node order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let positions = order.iter().map(|&i| self.positions[i]).collect();
        Self::new(positions, self.metric)
    }
}

fn distinct_sorted(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_numbering_and_shape() {
        let l = SpatialLayout::grid(3, 2, 1.0).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(l.position(4), [1.5, 1.5]);
        let g = l.grid_shape().unwrap();
        assert_eq!((g.cols, g.rows), (3, 2));
        assert_eq!(g.cell_of_node, (0..6).collect::<Vec<_>>());
        assert_eq!(l.pitch(), 1.0);
    }

    #[test]
    fn metrics() {
        let e = DistanceMetric::Euclidean.distance([0.0, 0.0], [3.0, 4.0]);
        let c = DistanceMetric::Chebyshev.distance([0.0, 0.0], [3.0, 4.0]);
        assert_eq!((e, c), (5.0, 4.0));
    }

    #[test]
    fn non_grid_layout() {
        let l = SpatialLayout::new(
            alloc::vec![[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]],
            DistanceMetric::Euclidean,
        )
        .unwrap();
        assert!(l.grid_shape().is_none());
    }

    #[test]
    fn rejects_bad_positions() {
        assert!(SpatialLayout::new(alloc::vec![[f64::NAN, 0.0]], DistanceMetric::Euclidean).is_err());
        assert!(SpatialLayout::grid(0, 3, 1.0).is_err());
    }
}
