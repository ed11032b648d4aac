use alloc::format;
use alloc::vec::Vec;

use super::{
    build_neighborhoods, memory_capacity_map, nonlinearity_map, stability_map, Diagnostic,
    MetricConfig, MetricMap,
};
use crate::reservoirs::{drive, prepare, relax, RelaxReport, Reservoir, ReservoirSpec, RELAX_MAX_STEPS, RELAX_TOLERANCE};
use crate::{ReadoutMatrix, Result};

/// The three maps from one drive, plus what was recorded on the way.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub nonlinearity: MetricMap,
    pub memory_capacity: MetricMap,
    pub stability: MetricMap,
    pub readouts: ReadoutMatrix,
    pub initial_state: Vec<f64>,
    pub final_state: Vec<f64>,
    pub initial_relax: RelaxReport,
    pub final_relax: RelaxReport,
}

/// Builds the reservoir from `spec`, warms it up and relaxes it, then runs
/// [`analyze_reservoir`].
pub fn analyze(u: &[f64], spec: &ReservoirSpec, config: &MetricConfig) -> Result<Analysis> {
    let mut reservoir = spec.build()?;
    let initial_relax = prepare(&mut reservoir, spec.warmup_samples, spec.seed)?;
    analyze_reservoir(u, &mut reservoir, initial_relax, config)
}

/// Snapshot the relaxed state, drive with `u`, relax, snapshot again; then
/// compute nonlinearity and memory capacity from the recorded
/// `(u, readouts)` pair and stability from the two snapshots.
pub fn analyze_reservoir<R: Reservoir>(
    u: &[f64],
    reservoir: &mut R,
    initial_relax: RelaxReport,
    config: &MetricConfig,
) -> Result<Analysis> {
    let initial_state = reservoir.snapshot();
    let readouts = drive(reservoir, u)?;
    let final_relax = relax(reservoir, RELAX_TOLERANCE, RELAX_MAX_STEPS);
    let final_state = reservoir.snapshot();

    let layout = readouts.layout().clone();
    let mut nonlinearity = nonlinearity_map(u, &readouts, config)?;
    let neighborhoods = build_neighborhoods(&layout, config.resolved_threshold(&layout))?;
    let memory_capacity = memory_capacity_map(u, &readouts, &neighborhoods, config)?;
    let mut stability = stability_map(&initial_state, &final_state, &layout)?;
    for (label, report) in [("initial", initial_relax), ("final", final_relax)] {
        if !report.converged {
            let note = Diagnostic::Note(format!(
                "{label} relaxation did not converge after {} steps (residual {:e})",
                report.steps, report.residual
            ));
            stability.diagnostics.push(note.clone());
            nonlinearity.diagnostics.push(note);
        }
    }
    Ok(Analysis {
        nonlinearity,
        memory_capacity,
        stability,
        readouts,
        initial_state,
        final_state,
        initial_relax,
        final_relax,
    })
}
