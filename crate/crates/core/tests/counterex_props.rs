use isoperim::counterex::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn direct_and_uv_routes_agree(
        alpha in -0.95f64..-0.05,
        la in -2.0f64..4.0,
        lw in -4.0f64..1.0,
    ) {
        let a = 10f64.powf(la);
        let r = RectSet::new(a, a * (1.0 + 10f64.powf(lw)), alpha).unwrap();
        let u = a.powf(alpha + 1.0);
        let v = r.b.powf(alpha + 1.0) - u;
        let direct = rect_ratio(&r);
        prop_assert!((direct - rect_ratio_uv(u, v, alpha).unwrap()).abs() <= 1e-10 * direct);
        prop_assert!((direct - rect_ratio_uv(r.u(), r.v(), alpha).unwrap()).abs() <= 1e-10 * direct);
    }

    #[test]
    fn ratio_blows_up_in_v_and_first_term_vanishes(alpha in -0.95f64..-0.05, lu in -2.0f64..3.0) {
        let u = 10f64.powf(lu);
        // Past the point where the first term dominates the ratio grows without bound.
        let mut v0 = 1.0;
        while {
            let (x, y) = rect_ratio_terms(u, v0, alpha).unwrap();
            x < y
        } {
            v0 *= 10.0;
        }
        let big: Vec<f64> = (0..10).map(|j| rect_ratio_uv(u, v0 * 10f64.powi(2 * j), alpha).unwrap()).collect();
        prop_assert!(big.windows(2).all(|w| w[1] > w[0]) && big[9] > 1e3 * big[0]);
        let small: Vec<f64> = (0..10).map(|j| rect_ratio_terms(u, 10f64.powi(-2 * j), alpha).unwrap().0).collect();
        prop_assert!(small.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(small[9] < 1e-5);
    }
}

#[test]
fn vanishing_sequence_meets_its_contract() {
    for alpha in [-0.9, -0.5, -0.1] {
        for eps in [1.0, 0.3, 0.1, 0.03] {
            let r = vanishing_sequence(alpha, eps).unwrap();
            assert!(rect_ratio(&r) < eps);
        }
        let mut prev = f64::INFINITY;
        for j in 0..=6 {
            let eps = 2f64.powi(-j);
            let q = rect_ratio(&vanishing_sequence(alpha, eps).unwrap());
            assert!(q < eps && q < prev);
            prev = q;
        }
    }
}
