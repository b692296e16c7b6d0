mod common;

use common::{mode_for, random_star, random_sufficient};
use isoperim::geometry::{crad, half_ball_measure_ratio, measure_ratio, rayleigh_ratio, StarSet, WeightParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rayleigh_ratio_is_scale_invariant(
        seed in any::<u64>(),
        k in -0.5f64..2.0,
        l in -0.5f64..2.0,
        n in 2usize..=3,
        alpha in 0.0f64..2.0,
    ) {
        let p = WeightParams::new(k, l, n, alpha).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_star(&mut rng, mode_for(n), 0.3);
        let r = rayleigh_ratio(&m, &p).unwrap();
        for t in [0.5, 2.0, 10.0] {
            let s = rayleigh_ratio(&m.scaled(t).unwrap(), &p).unwrap();
            prop_assert!((s - r).abs() <= 1e-9 * r);
        }
    }

    #[test]
    fn half_balls_minimise_the_measure_ratio(
        seed in any::<u64>(),
        lp in -1.0f64..2.0,
        gap in 0.05f64..2.0,
        n in 2usize..=3,
        alpha in 0.0f64..2.0,
    ) {
        let l = lp + gap;
        let p = WeightParams::new(0.0, l, n, alpha).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_star(&mut rng, mode_for(n), 0.3);
        let v = measure_ratio(&m, l, lp, &p).unwrap();
        let b = half_ball_measure_ratio(l, lp, n, alpha).unwrap();
        prop_assert!(v >= b * (1.0 - 1e-10), "{v} < {b}");
    }
}

#[test]
fn base_inequality_on_random_star_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3] {
        for alpha in [0.0, 0.5, 1.0] {
            let p = WeightParams::new(0.0, 0.0, n, alpha).unwrap();
            let c = crad(&p).unwrap();
            for _ in 0..200 {
                let amp = rng.gen_range(0.01..0.5);
                let m = random_star(&mut rng, mode_for(n), amp);
                assert!(rayleigh_ratio(&m, &p).unwrap() >= c - 1e-7);
            }
        }
    }
}

#[test]
fn main_inequality_in_sufficient_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [2, 3] {
        for alpha in [0.0, 0.5, 1.0] {
            for _ in 0..10 {
                let p = random_sufficient(&mut rng, n, alpha);
                let c = crad(&p).unwrap();
                let ball = StarSet::half_ball(mode_for(n), 33, rng.gen_range(0.2..3.0)).unwrap();
                assert!((rayleigh_ratio(&ball, &p).unwrap() - c).abs() <= 1e-9 * c);
                for _ in 0..20 {
                    let amp = rng.gen_range(0.01..0.5);
                    let m = random_star(&mut rng, mode_for(n), amp);
                    let r = rayleigh_ratio(&m, &p).unwrap();
                    assert!(r >= c - 1e-7, "{p:?}: {r} < {c}");
                }
            }
        }
    }
}

#[test]
fn crad_matches_unit_half_ball() {
    let vals = [-0.5, 0.0, 0.5, 1.0, 2.0];
    let mut checked = 0;
    for &k in &vals {
        for &l in &vals {
            for n in [2, 3] {
                for alpha in [0.0, 0.5, 1.0] {
                    let p = WeightParams::new(k, l, n, alpha).unwrap();
                    if p.check_admissible().is_err() {
                        continue;
                    }
                    let ball = StarSet::half_ball(mode_for(n), 17, 1.0).unwrap();
                    let c = crad(&p).unwrap();
                    assert!((rayleigh_ratio(&ball, &p).unwrap() - c).abs() <= 1e-9 * c);
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 150);
}
