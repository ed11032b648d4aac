use proptest::prelude::*;
use spatial_rc_core::metrics::delay_embed;
use spatial_rc_core::{random_signal, split_train_test};

proptest! {
    #[test]
    fn split_is_an_ordered_partition(len in 2usize..500, fraction in 0.01..0.99f64) {
        let rows: Vec<usize> = (0..len).collect();
        let targets: Vec<f64> = rows.iter().map(|&r| r as f64).collect();
        match split_train_test(&rows, &targets, fraction) {
            Ok(((f_train, t_train), (f_test, t_test))) => {
                prop_assert_eq!(f_train.len(), (len as f64 * fraction).floor() as usize);
                prop_assert_eq!(f_train.len(), t_train.len());
                prop_assert_eq!(f_test.len(), t_test.len());
                let joined: Vec<usize> = f_train.iter().chain(f_test).copied().collect();
                prop_assert_eq!(joined, rows);
            }
            Err(_) => {
                let cut = (len as f64 * fraction).floor() as usize;
                prop_assert!(cut == 0 || cut == len);
            }
        }
    }

    #[test]
    fn seeded_signals_repeat(seed in any::<u64>(), n in 1usize..300) {
        let a = random_signal(n, -1.0, 1.0, seed).unwrap();
        let b = random_signal(n, -1.0, 1.0, seed).unwrap();
        prop_assert_eq!(a.values(), b.values());
        prop_assert!(a.values().iter().all(|v| (-1.0..1.0).contains(v)));
    }

    #[test]
    fn embedding_rows_hold_past_values(len in 1usize..80, k in 0usize..10, seed in any::<u64>()) {
        let u = random_signal(len, -1.0, 1.0, seed).unwrap().values().to_vec();
        match delay_embed(&u, k) {
            Ok(m) => {
                prop_assert_eq!((m.rows(), m.cols()), (len - k, k + 1));
                for r in 0..m.rows() {
                    for tau in 0..=k {
                        prop_assert_eq!(m.get(r, tau), u[r + k - tau]);
                    }
                }
            }
            Err(_) => prop_assert!(k >= len),
        }
    }
}

#[test]
fn embedding_examples() {
    let m = delay_embed(&[1.0, 2.0, 3.0, 4.0], 1).unwrap();
    assert_eq!(m.as_slice(), &[2.0, 1.0, 3.0, 2.0, 4.0, 3.0]);
    let u = random_signal(1500, -1.0, 1.0, 1).unwrap();
    let m = delay_embed(u.values(), 20).unwrap();
    assert_eq!((m.rows(), m.cols()), (1480, 21));
}
