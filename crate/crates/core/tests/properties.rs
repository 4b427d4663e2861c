use num_complex::Complex64;
use proptest::prelude::*;

use orbit_embed::action::distance;
use orbit_embed::oracle::direct_dft;
use orbit_embed::sampling::{gaussian_signal, sample_rng};
use orbit_embed::{dft, idft, CyclicAction, Pipeline, TargetDim};

fn signal(seed: u64, idx: u64, n: usize) -> Vec<Complex64> {
    gaussian_signal(&mut sample_rng(seed, idx), n).into_inner()
}

fn action_strategy() -> impl Strategy<Value = CyclicAction> {
    prop_oneof![
        (1usize..10, prop::collection::vec(-20i64..20, 1..5))
            .prop_map(|(m, w)| CyclicAction::diagonal(m, &w).unwrap()),
        (1usize..9).prop_map(|n| CyclicAction::translation(n).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_distance_is_a_metric(action in action_strategy(), seed in any::<u64>()) {
        let n = action.n();
        let (x, y, z) = (signal(seed, 0, n), signal(seed, 1, n), signal(seed, 2, n));
        let d = |a: &[Complex64], b: &[Complex64]| action.quotient_distance(a, b).unwrap();
        prop_assert_eq!(d(&x, &x), 0.0);
        prop_assert!((d(&x, &y) - d(&y, &x)).abs() <= 1e-12);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-12);
        prop_assert!(d(&x, &y) <= distance(&x, &y) + 1e-15);
        let gx = action.act(3, &x).unwrap();
        prop_assert!(d(&gx, &x) <= 1e-12);
        prop_assert!((d(&gx, &y) - d(&x, &y)).abs() <= 1e-12);
    }

    #[test]
    fn action_is_unitary_and_cyclic(action in action_strategy(), seed in any::<u64>(), k in -30i64..30) {
        let x = signal(seed, 0, action.n());
        let gx = action.act(k, &x).unwrap();
        prop_assert!((gx.norm() - orbit_embed::action::norm(&x)).abs() <= 1e-12 * (1.0 + gx.norm()));
        let full = action.act(action.m() as i64, &x).unwrap();
        prop_assert!(distance(&full, &x) <= 1e-12 * (1.0 + gx.norm()));
        let back = action.act(-k, &gx).unwrap();
        prop_assert!(distance(&back, &x) <= 1e-12 * (1.0 + gx.norm()));
    }

    #[test]
    fn dft_is_unitary_and_matches_direct_sum(n in 1usize..40, seed in any::<u64>()) {
        let x = signal(seed, 0, n);
        let xh = dft(&x).unwrap();
        let scale = orbit_embed::action::norm(&x);
        prop_assert!((xh.norm() - scale).abs() <= 1e-12 * scale);
        prop_assert!(distance(&xh, &direct_dft(&x)) <= 1e-11 * scale);
        prop_assert!(distance(&idft(&xh).unwrap(), &x) <= 1e-12 * scale);
    }

    #[test]
    fn embedding_is_invariant_and_positively_homogeneous(
        action in action_strategy(),
        seed in any::<u64>(),
        k in 0i64..20,
        c in 1e-3f64..1e3,
    ) {
        let p = Pipeline::new(action.clone(), TargetDim::Auto, seed).unwrap();
        let x = signal(seed, 5, action.n());
        let phi = p.embed(&x).unwrap();
        let scale = 1.0 + orbit_embed::action::norm(&phi);
        let moved = p.embed(&action.act(k, &x).unwrap()).unwrap();
        prop_assert!(distance(&phi, &moved) <= 1e-10 * scale);
        let cx: Vec<Complex64> = x.iter().map(|z| z * c).collect();
        let scaled: Vec<Complex64> = phi.iter().map(|z| z * c).collect();
        prop_assert!(distance(&p.embed(&cx).unwrap(), &scaled) <= 1e-10 * c * scale);
    }

    #[test]
    fn embedding_respects_lipschitz_bound(action in action_strategy(), seed in any::<u64>()) {
        let p = Pipeline::new(action.clone(), TargetDim::Auto, seed).unwrap();
        let n = action.n();
        let (x, y) = (signal(seed, 1, n), signal(seed, 2, n));
        let d = action.quotient_distance(&x, &y).unwrap();
        prop_assume!(d > 1e-9);
        let ratio = distance(&p.embed(&x).unwrap(), &p.embed(&y).unwrap()) / d;
        prop_assert!(ratio <= p.lipschitz_bound().bound * (1.0 + 1e-9));
    }
}
