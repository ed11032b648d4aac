use spatial_rc_core::reservoirs::{drive, prepare, FilterParams, ModelParams, TanhParams};
use spatial_rc_core::tasks::{mackey_glass, train_readout, MackeyGlassParams, ReadoutTraining};
use spatial_rc_core::{random_signal, ReservoirSpec};

fn early(dt: f64) -> Vec<f64> {
    let p = MackeyGlassParams { dt, transient: 0.0, t_end: 50.0, ..MackeyGlassParams::default() };
    mackey_glass(&p).unwrap().values().to_vec()
}

#[test]
fn step_halving_order() {
    let (coarse, mid, fine) = (early(0.2), early(0.1), early(0.05));
    let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let order = (diff(&coarse, &mid) / diff(&mid, &fine)).log2();
    println!("observed order {order}");
    assert!(order >= 1.9, "{order}");
    assert!(diff(&mid, &fine) < 1e-5);
}

#[test]
fn generator_is_deterministic_and_records_parameters() {
    let p = MackeyGlassParams { t_end: 600.0, ..MackeyGlassParams::default() };
    let a = mackey_glass(&p).unwrap();
    let b = mackey_glass(&p).unwrap();
    assert_eq!(a.values(), b.values());
    assert_eq!(a.len(), 401);
    assert_eq!(a.meta.param("tau"), Some(23.0));
    assert_eq!(a.meta.param("n"), Some(10.0));
}

#[test]
fn training_error_below_test_error_on_average() {
    let mut gap = 0.0;
    for seed in 0..10 {
        let u = random_signal(900, -1.0, 1.0, seed).unwrap().values().to_vec();
        let spec = ReservoirSpec::new(4, 3, ModelParams::TanhLattice(TanhParams::uniform(2.0))).with_seed(seed);
        let mut r = spec.build().unwrap();
        prepare(&mut r, 100, seed).unwrap();
        let readouts = drive(&mut r, &u).unwrap();
        let target: Vec<f64> = u.iter().map(|v| v * v).collect();
        let out = train_readout(&readouts, &target, 2, &ReadoutTraining::default()).unwrap();
        assert!(out.mse >= 0.0 && out.train_mse >= 0.0);
        gap += out.mse - out.train_mse;
    }
    assert!(gap > 0.0, "{gap}");
}

#[test]
fn zero_horizon_recovers_a_node() {
    let u = random_signal(700, -1.0, 1.0, 8).unwrap().values().to_vec();
    let spec = ReservoirSpec::new(3, 2, ModelParams::LtiFilterBank(FilterParams::default()));
    let mut r = spec.build().unwrap();
    let readouts = drive(&mut r, &u).unwrap();
    let target = readouts.trace(4);
    let out = train_readout(&readouts, &target, 0, &ReadoutTraining::default()).unwrap();
    assert!(out.mse < 1e-20, "{}", out.mse);
}
