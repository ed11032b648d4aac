//! Seeded Voronoi grain landscapes.
//!
//! Sites are scattered uniformly over a `width × height` grid, one per
//! `mean_grain_size²` of area on average, and every grid cell joins the
//! grain of its nearest site. Each grain draws a parameter multiplier
//! `1 + variance_fraction · N(0, 1)` clipped to `[0.1, 1.9]`.

use alloc::vec::Vec;

use crate::rng::Prng;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GrainMap {
    pub width: usize,
    pub height: usize,
    pub mean_grain_size: f64,
    pub variance_fraction: f64,
    /// Grain seed points in grid units (cell `(x, y)` spans `[x, x+1)`).
    pub sites: Vec<[f64; 2]>,
    /// One multiplier per grain.
    pub multipliers: Vec<f64>,
    /// Row-major grain label of every grid cell.
    pub labels: Vec<u32>,
}

impl GrainMap {
    /// Multiplier of the grain covering cell `(x, y)`.
    pub fn multiplier_at(&self, x: usize, y: usize) -> f64 {
        self.multipliers[self.labels[y * self.width + x] as usize]
    }

    /// Multiplier of the grain containing the continuous point `p`.
    pub fn multiplier_near(&self, p: [f64; 2]) -> f64 {
        let x = (libm::floor(p[0]).max(0.0) as usize).min(self.width - 1);
        let y = (libm::floor(p[1]).max(0.0) as usize).min(self.height - 1);
        self.multiplier_at(x, y)
    }

    /// Per-cell multipliers, row-major.
    pub fn cell_multipliers(&self) -> Vec<f64> {
        self.labels
            .iter()
            .map(|&l| self.multipliers[l as usize])
            .collect()
    }

    /// Number of grains that own at least one grid cell.
    pub fn occupied_grains(&self) -> usize {
        let mut seen = alloc::vec![false; self.sites.len()];
        for &l in &self.labels {
            seen[l as usize] = true;
        }
        seen.into_iter().filter(|&s| s).count()
    }
}

pub fn voronoi_grains(
    width: usize,
    height: usize,
    mean_grain_size: f64,
    variance_fraction: f64,
    seed: u64,
) -> Result<GrainMap> {
    if width == 0 || height == 0 {
        return Err(Error::param("dims", "grain grid dimensions must be at least 1"));
    }
    if !(mean_grain_size > 0.0) || mean_grain_size >= width.min(height) as f64 {
        return Err(Error::param(
            "mean_grain_size",
            "must be positive and smaller than both grid dimensions",
        ));
    }
    if !(0.0..1.0).contains(&variance_fraction) {
        return Err(Error::param("variance_fraction", "must lie in [0, 1)"));
    }
    let area = (width * height) as f64;
    let count = (libm::round(area / (mean_grain_size * mean_grain_size)) as usize).max(1);
    let mut rng = Prng::new(seed);
    let sites: Vec<[f64; 2]> = (0..count)
        .map(|_| [rng.uniform(0.0, width as f64), rng.uniform(0.0, height as f64)])
        .collect();
    let multipliers = (0..count)
        .map(|_| {
            if variance_fraction == 0.0 {
                1.0
            } else {
                (1.0 + variance_fraction * rng.standard_normal()).clamp(0.1, 1.9)
            }
        })
        .collect();
    let labels = rasterize(&sites, width, height, mean_grain_size);
    Ok(GrainMap {
        width,
        height,
        mean_grain_size,
        variance_fraction,
        sites,
        multipliers,
        labels,
    })
}

/// Nearest-site labels via a bucket grid of roughly one site per bucket.
fn rasterize(sites: &[[f64; 2]], width: usize, height: usize, bucket: f64) -> Vec<u32> {
    let bw = (libm::ceil(width as f64 / bucket) as usize).max(1);
    let bh = (libm::ceil(height as f64 / bucket) as usize).max(1);
    let mut buckets: Vec<Vec<u32>> = alloc::vec![Vec::new(); bw * bh];
    let bucket_of = |p: [f64; 2]| {
        let bx = ((p[0] / bucket) as usize).min(bw - 1);
        let by = ((p[1] / bucket) as usize).min(bh - 1);
        (bx, by)
    };
    for (i, s) in sites.iter().enumerate() {
        let (bx, by) = bucket_of(*s);
        buckets[by * bw + bx].push(i as u32);
    }
    let mut labels = alloc::vec![0u32; width * height];
    for y in 0..height {
        for x in 0..width {
            let p = [x as f64 + 0.5, y as f64 + 0.5];
            let (bx, by) = bucket_of(p);
            let mut best = (f64::INFINITY, 0u32);
            let mut ring = 0usize;
            loop {
                let x0 = bx.saturating_sub(ring);
                let x1 = (bx + ring).min(bw - 1);
                let y0 = by.saturating_sub(ring);
                let y1 = (by + ring).min(bh - 1);
                for yy in y0..=y1 {
                    for xx in x0..=x1 {
                        let on_ring = xx + ring == bx || xx == bx + ring || yy + ring == by || yy == by + ring;
                        if !on_ring {
                            continue;
                        }
                        for &i in &buckets[yy * bw + xx] {
                            let s = sites[i as usize];
                            let d = (s[0] - p[0]) * (s[0] - p[0]) + (s[1] - p[1]) * (s[1] - p[1]);
                            if d < best.0 || (d == best.0 && i < best.1) {
                                best = (d, i);
                            }
                        }
                    }
                }
                // Any unvisited site lies at least `ring * bucket` away.
                let covered = x0 == 0 && y0 == 0 && x1 == bw - 1 && y1 == bh - 1;
                let reach = ring as f64 * bucket;
                if covered || (best.0.is_finite() && best.0 <= reach * reach) {
                    break;
                }
                ring += 1;
            }
            labels[y * width + x] = best.1;
        }
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_labels(g: &GrainMap) -> Vec<u32> {
        let mut out = Vec::new();
        for y in 0..g.height {
            for x in 0..g.width {
                let p = [x as f64 + 0.5, y as f64 + 0.5];
                let mut best = (f64::INFINITY, 0u32);
                for (i, s) in g.sites.iter().enumerate() {
                    let d = (s[0] - p[0]) * (s[0] - p[0]) + (s[1] - p[1]) * (s[1] - p[1]);
                    if d < best.0 {
                        best = (d, i as u32);
                    }
                }
                out.push(best.1);
            }
        }
        out
    }

    #[test]
    fn bucketed_matches_brute_force() {
        let g = voronoi_grains(97, 61, 7.5, 0.2, 3).unwrap();
        assert_eq!(g.labels, brute_labels(&g));
    }

    #[test]
    fn no_variance_means_unit_multipliers() {
        let g = voronoi_grains(64, 64, 8.0, 0.0, 1).unwrap();
        assert!(g.multipliers.iter().all(|&m| m == 1.0));
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            voronoi_grains(50, 40, 5.0, 0.2, 9).unwrap(),
            voronoi_grains(50, 40, 5.0, 0.2, 9).unwrap()
        );
    }

    #[test]
    fn multiplier_spread_matches_fraction() {
        let g = voronoi_grains(200, 200, 10.0, 0.2, 4).unwrap();
        assert!(g.multipliers.len() >= 100);
        assert!(g.multipliers.iter().all(|&m| m > 0.0));
        let m = crate::stats::mean(&g.multipliers);
        let n = g.multipliers.len() as f64;
        let sd = libm::sqrt(crate::stats::variance(&g.multipliers) * n / (n - 1.0));
        assert!((sd - 0.2 * m).abs() < 0.3 * 0.2 * m, "sd {sd}");
    }

    #[test]
    fn invalid_inputs() {
        assert!(voronoi_grains(0, 10, 2.0, 0.1, 1).is_err());
        assert!(voronoi_grains(10, 10, 10.0, 0.1, 1).is_err());
        assert!(voronoi_grains(10, 10, 2.0, 1.0, 1).is_err());
    }

    #[test]
    fn grain_count_follows_area() {
        let g = voronoi_grains(1024, 1024, 40.0, 0.2, 11).unwrap();
        let expected = 1024.0 * 1024.0 / 1600.0;
        let mut seen = alloc::vec![false; g.sites.len()];
        for &l in &g.labels {
            seen[l as usize] = true;
        }
        let counted = seen.iter().filter(|&&s| s).count() as f64;
        assert!((counted - expected).abs() < 0.2 * expected, "{counted}");
        assert_eq!(counted as usize, g.occupied_grains());
    }
}
