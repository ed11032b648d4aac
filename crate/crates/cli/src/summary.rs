use std::fmt::Write as _;

use spatial_rc_core::metrics::Analysis;
use spatial_rc_core::stats::spearman;
use spatial_rc_core::tasks::{SweepRow, PERSISTENCE};
use spatial_rc_core::{MetricMap, SpatialLayout};
use statrs::distribution::{ContinuousCDF, StudentsT};

/// Spearman's rho with its two-sided p-value from the t approximation
/// `t = ρ·sqrt((n − 2) / (1 − ρ²))`, `n − 2` degrees of freedom.
pub fn spearman_test(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len();
    let rho = spearman(x, y);
    if n < 3 {
        return (rho, 1.0);
    }
    if rho.abs() >= 1.0 {
        return (rho, 0.0);
    }
    let df = (n - 2) as f64;
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("df > 0");
    (rho, (2.0 * dist.sf(t.abs())).min(1.0))
}

/// Node coordinates projected on the drive direction.
pub fn drive_axis(layout: &SpatialLayout, direction: [f64; 2]) -> Vec<f64> {
    layout
        .positions()
        .iter()
        .map(|p| p[0] * direction[0] + p[1] * direction[1])
        .collect()
}

fn stats_line(out: &mut String, map: &MetricMap) {
    let _ = writeln!(
        out,
        "{:<16} mean {:.6}  min {:.6}  max {:.6}",
        map.kind.name(),
        map.mean(),
        map.min(),
        map.max()
    );
}

pub fn analysis_summary(name: &str, model: &str, analysis: &Analysis, direction: [f64; 2]) -> String {
    let mut out = String::new();
    let layout = analysis.readouts.layout();
    let _ = writeln!(out, "run {name}");
    let _ = writeln!(out, "model {model}, {} nodes, {} samples", layout.len(), analysis.readouts.steps());
    let _ = writeln!(out);
    for map in [&analysis.nonlinearity, &analysis.memory_capacity, &analysis.stability] {
        stats_line(&mut out, map);
    }
    let _ = writeln!(out);
    let nl = &analysis.nonlinearity.values;
    let (rho, p) = spearman_test(nl, &analysis.memory_capacity.values);
    let _ = writeln!(out, "spearman(nonlinearity, memory_capacity) rho {rho:.6}  p {p:.3e}");
    let (rho, p) = spearman_test(nl, &drive_axis(layout, direction));
    let _ = writeln!(out, "spearman(nonlinearity, drive_axis)      rho {rho:.6}  p {p:.3e}");
    let _ = writeln!(
        out,
        "relaxation: initial {} steps (residual {:.3e}), final {} steps (residual {:.3e})",
        analysis.initial_relax.steps,
        analysis.initial_relax.residual,
        analysis.final_relax.steps,
        analysis.final_relax.residual
    );
    let diagnostics: Vec<String> = [&analysis.nonlinearity, &analysis.memory_capacity, &analysis.stability]
        .iter()
        .flat_map(|m| m.diagnostics.iter().map(move |d| format!("{}: {d}", m.kind.name())))
        .collect();
    if !diagnostics.is_empty() {
        let _ = writeln!(out, "\ndiagnostics");
        for d in diagnostics {
            let _ = writeln!(out, "  {d}");
        }
    }
    out
}

pub fn benchmark_summary(name: &str, rows: &[SweepRow]) -> String {
    let mut models: Vec<&str> = Vec::new();
    for r in rows {
        if r.model != PERSISTENCE && !models.contains(&r.model.as_str()) {
            models.push(&r.model);
        }
    }
    let curve = |model: &str| -> Vec<(usize, f64)> {
        rows.iter().filter(|r| r.model == model).map(|r| (r.horizon, r.mse)).collect()
    };
    let mut out = String::new();
    let _ = writeln!(out, "run {name}\n");
    let _ = writeln!(out, "{:<16} {:>14} {:>14} {:>14}", "model", "mse first k", "mse last k", "mean mse");
    for m in models.iter().copied().chain([PERSISTENCE]) {
        let c = curve(m);
        let (Some(first), Some(last)) = (c.first(), c.last()) else { continue };
        let mean = c.iter().map(|(_, v)| v).sum::<f64>() / c.len() as f64;
        let _ = writeln!(out, "{m:<16} {:>14.6e} {:>14.6e} {:>14.6e}", first.1, last.1, mean);
    }
    let baseline = curve(PERSISTENCE);
    let _ = writeln!(out);
    for &m in &models {
        let c = curve(m);
        if let (Some(&(k, mse)), Some(&(_, base))) = (c.first(), baseline.first()) {
            let verdict = if mse < base { "beats" } else { "does not beat" };
            let _ = writeln!(out, "{m} {verdict} persistence at k={k} ({mse:.3e} vs {base:.3e})");
        }
    }
    if models.len() > 1 {
        let _ = writeln!(out, "\nmin over k of (mse - best other model)");
        for &m in &models {
            let gap = curve(m)
                .iter()
                .map(|&(k, mse)| {
                    let best = models
                        .iter()
                        .filter(|&&o| o != m)
                        .filter_map(|&o| rows.iter().find(|r| r.model == o && r.horizon == k))
                        .map(|r| r.mse)
                        .fold(f64::INFINITY, f64::min);
                    (mse - best, k)
                })
                .fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a });
            let _ = writeln!(out, "  {m:<16} {:+.3e} at k={}", gap.0, gap.1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spearman_p_values() {
        let x: Vec<f64> = (0..30).map(f64::from).collect();
        let y: Vec<f64> = x.iter().map(|v| v * v).collect();
        assert_eq!(spearman_test(&x, &y), (1.0, 0.0));
        // Reference values from scipy.stats.spearmanr.
        let z: Vec<f64> = x.iter().map(|v| ((v * 7.0) % 11.0) - 5.0).collect();
        let (rho, p) = spearman_test(&x, &z);
        assert!((rho - 0.07146899925434254).abs() < 1e-12);
        assert!((p - 0.7074381451908172).abs() < 1e-9, "{p}");
        let w: Vec<f64> = x.iter().map(|v| v + (v * v * 3.0) % 23.0).collect();
        let (rho, p) = spearman_test(&x, &w);
        assert!((rho - 0.8239231040817344).abs() < 1e-12);
        assert!((p / 2.217725704902702e-08 - 1.0).abs() < 1e-6, "{p}");
    }
}
