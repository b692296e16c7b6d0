mod common;

use common::mode_for;
use isoperim::geometry::WeightParams;
use isoperim::quad::HemisphereMeasure;
use isoperim::regions::breaking_threshold;
use isoperim::spectral::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn second_variation_is_bounded_by_the_poincare_gap(
        c in prop::collection::vec(-1.0f64..1.0, 4),
        k in -0.5f64..2.0,
        l in -0.5f64..2.0,
        n in 2usize..=3,
        alpha in 0.0f64..1.5,
    ) {
        let p = WeightParams::new(k, l, n, alpha).unwrap();
        prop_assume!(p.check_admissible().is_ok());
        let mode = mode_for(n);
        let m = HemisphereMeasure::new(mode, n, alpha).unwrap();
        let raw = {
            let c = c.clone();
            move |t: f64| c.iter().enumerate().map(|(j, a)| a * ((j + 1) as f64 * t).sin()).sum::<f64>()
        };
        let mean = m.integrate(&raw).unwrap() / m.total().unwrap();
        let c2 = c.clone();
        let u = AngularFunction::analytic(
            mode,
            move |t| raw(t) - mean,
            move |t| c2.iter().enumerate().map(|(j, a)| a * (j + 1) as f64 * ((j + 1) as f64 * t).cos()).sum(),
        );
        let sq = m.integrate(|t| {
            let v: f64 = c.iter().enumerate().map(|(j, a)| a * ((j + 1) as f64 * t).sin()).sum::<f64>() - mean;
            v * v
        }).unwrap();
        let j = second_variation(&u, &p).unwrap();
        let lambda = (n as f64 + alpha - 1.0) * (1.0 - 1e-9);
        let coef = p.perimeter_degree() * (p.l + 1.0 - p.k);
        prop_assert!(j >= (lambda - coef) * sq - 1e-9 * (1.0 + j.abs()), "{j} < {}", (lambda - coef) * sq);
    }
}

#[test]
fn wirtinger_converges_at_second_order() {
    for alpha in [-0.5, 0.0, 1.0] {
        let order = observed_order(|g| Ok(wirtinger_min_eig(alpha, g)?.min_eigenvalue), 500).unwrap();
        assert!(order >= 1.8, "alpha={alpha}: order {order}");
    }
}

#[test]
fn wirtinger_eigenvector_is_sine() {
    for alpha in [-0.5, 0.0, 1.0, 2.0] {
        let e = wirtinger_min_eig(alpha, 800).unwrap();
        assert!(e.correlation_with(f64::sin).abs() >= 0.999);
    }
}

#[test]
fn stability_matches_breaking_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let dims = [(2, 0.0), (2, 0.5), (3, 0.0), (3, 1.0), (4, 0.5)];
    let mut tested = 0;
    while tested < 500 {
        let (n, alpha) = dims[rng.gen_range(0..dims.len())];
        let p = WeightParams::new(rng.gen_range(-0.8..2.5), rng.gen_range(-1.0..3.0), n, alpha).unwrap();
        if p.check_admissible().is_err() {
            continue;
        }
        let s = stability_verdict(&p).unwrap();
        let lb = breaking_threshold(p.k, n, alpha).unwrap();
        match s.verdict {
            Stability::Marginal => {}
            Stability::Unstable => assert!(p.l > lb, "{p:?}"),
            Stability::Stable => assert!(p.l <= lb, "{p:?}"),
        }
        tested += 1;
    }
}
