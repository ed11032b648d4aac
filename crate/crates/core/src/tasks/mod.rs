//! Mackey-Glass generation and the k-step-ahead prediction benchmark.

mod mackey_glass;
mod prediction;

pub use mackey_glass::{mackey_glass, MackeyGlassParams};
pub use prediction::{
    horizon_sweep, run_benchmark, train_readout, PredictionResult, ReadoutTraining, SweepRow,
    PERSISTENCE,
};
