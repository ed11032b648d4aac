use proptest::prelude::*;
use spatial_rc_core::stats::pearson;
use spatial_rc_core::{estimator_quality, fit_ols, r_squared, random_signal, Matrix, Prng};

fn uniform(n: usize, seed: u64) -> Vec<f64> {
    random_signal(n, -1.0, 1.0, seed).unwrap().values().to_vec()
}

/// Two-pass textbook squared correlation, kept separate from the library.
fn r2_oracle(p: &[f64], a: &[f64]) -> f64 {
    let n = p.len() as f64;
    let (mp, ma) = (p.iter().sum::<f64>() / n, a.iter().sum::<f64>() / n);
    let (mut spa, mut spp, mut saa) = (0.0, 0.0, 0.0);
    for (x, y) in p.iter().zip(a) {
        spa += (x - mp) * (y - ma);
        spp += (x - mp) * (x - mp);
        saa += (y - ma) * (y - ma);
    }
    spa * spa / (spp * saa)
}

#[test]
fn exact_linear_fit() {
    let u = uniform(200, 1);
    let y: Vec<f64> = u.iter().map(|v| 3.0 * v + 2.0).collect();
    let est = fit_ols(&Matrix::from_columns(&[&u]).unwrap(), &y).unwrap();
    assert!((est.weights[0] - 3.0).abs() < 1e-10);
    assert!((est.intercept - 2.0).abs() < 1e-10);
}

#[test]
fn constant_target() {
    let f = Matrix::from_columns(&[uniform(100, 2), uniform(100, 3)]).unwrap();
    let est = fit_ols(&f, &[5.0; 100]).unwrap();
    assert!(est.weights.iter().all(|w| w.abs() < 1e-12));
    assert!((est.intercept - 5.0).abs() < 1e-12);
}

#[test]
fn collinear_design_predicts_exactly() {
    let u = uniform(150, 4);
    let twice: Vec<f64> = u.iter().map(|v| 2.0 * v).collect();
    let y: Vec<f64> = u.iter().map(|v| 4.0 * v).collect();
    let f = Matrix::from_columns(&[&u, &twice]).unwrap();
    let est = fit_ols(&f, &y).unwrap();
    for (p, t) in est.predict(&f).iter().zip(&y) {
        assert!((p - t).abs() < 1e-8);
    }
    // Minimum norm puts the weight on both columns in ratio 1:2.
    assert!((est.weights[1] - 2.0 * est.weights[0]).abs() < 1e-8);
}

#[test]
fn too_few_rows_rejected() {
    let f = Matrix::from_columns(&[uniform(3, 5), uniform(3, 6), uniform(3, 7)]).unwrap();
    assert!(fit_ols(&f, &[1.0, 2.0, 3.0]).is_err());
}

#[test]
fn residuals_orthogonal_to_features() {
    for seed in 0..5 {
        let cols: Vec<Vec<f64>> = (0..6).map(|c| uniform(400, 100 * seed + c)).collect();
        let noise = uniform(400, 100 * seed + 99);
        let y: Vec<f64> = (0..400)
            .map(|t| cols[0][t] - 0.5 * cols[3][t] * cols[1][t] + 0.2 * noise[t])
            .collect();
        let f = Matrix::from_columns(&cols).unwrap();
        let est = fit_ols(&f, &y).unwrap();
        let residual: Vec<f64> = est.predict(&f).iter().zip(&y).map(|(p, t)| t - p).collect();
        assert!(residual.iter().sum::<f64>().abs() < 1e-10);
        for c in &cols {
            assert!(pearson(&residual, c).abs() < 1e-8);
        }
    }
}

#[test]
fn r_squared_examples() {
    let a = uniform(300, 8);
    assert!((r_squared(&a, &a).unwrap() - 1.0).abs() < 1e-15);
    let affine: Vec<f64> = a.iter().map(|v| -7.0 * v + 1.5).collect();
    assert!((r_squared(&affine, &a).unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(r_squared(&[2.0; 300], &a).unwrap(), 0.0);
    assert!(r_squared(&a[..10], &a).is_err());
}

#[test]
fn r_squared_affine_invariance() {
    for seed in 0..20 {
        let p = uniform(250, seed);
        let a = uniform(250, seed + 1000);
        let base = r_squared(&p, &a).unwrap();
        assert!((base - r2_oracle(&p, &a)).abs() < 1e-12);
        for alpha in [-2.0, 0.5] {
            for beta in [0.0, 3.0] {
                let q: Vec<f64> = p.iter().map(|v| alpha * v + beta).collect();
                assert!((r_squared(&q, &a).unwrap() - base).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn independent_series_score_near_zero() {
    let mean = (0..100u64)
        .map(|s| r_squared(&uniform(250, 2 * s), &uniform(250, 2 * s + 1)).unwrap())
        .sum::<f64>()
        / 100.0;
    // E[R²] ≈ 1/(T−1) ≈ 0.004.
    assert!(mean < 0.02, "{mean}");
}

#[test]
fn estimator_quality_examples() {
    let u = uniform(1000, 9);
    let f = Matrix::from_columns(&[&u]).unwrap();
    let lin: Vec<f64> = u.iter().map(|v| 2.0 * v - 1.0).collect();
    assert!(estimator_quality(&f, &lin, 0.75).unwrap() >= 0.999);
    let sq: Vec<f64> = u.iter().map(|v| v * v).collect();
    assert!(estimator_quality(&f, &sq, 0.75).unwrap() < 0.05);
    let noise = uniform(1000, 10);
    assert!(estimator_quality(&f, &noise, 0.75).unwrap() < 0.05);
}

fn series(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3..1e3f64, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn r_squared_in_unit_interval((p, a) in (2usize..60).prop_flat_map(|n| (series(n), series(n)))) {
        let r = r_squared(&p, &a).unwrap();
        prop_assert!((0.0..=1.0).contains(&r));
    }

    #[test]
    fn fit_reproduces_exact_linear_targets(
        w in prop::collection::vec(-5.0..5.0f64, 1..5),
        c in -5.0..5.0f64,
        seed in any::<u64>(),
    ) {
        let mut rng = Prng::new(seed);
        let rows = 40;
        let cols: Vec<Vec<f64>> = w.iter().map(|_| (0..rows).map(|_| rng.uniform(-1.0, 1.0)).collect()).collect();
        let y: Vec<f64> = (0..rows).map(|t| c + w.iter().zip(&cols).map(|(wi, col)| wi * col[t]).sum::<f64>()).collect();
        let est = fit_ols(&Matrix::from_columns(&cols).unwrap(), &y).unwrap();
        for (a, b) in est.weights.iter().zip(&w) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        prop_assert!((est.intercept - c).abs() < 1e-9);
    }
}
