use isoperim::geometry::{horiuchi_exponent, WeightParams};
use isoperim::regions::{breaking_threshold, classify, l1_threshold, Case, Label};
use isoperim::spectral::{stability_verdict, Stability};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn sufficient_threshold_below_necessary_threshold() {
    for i in 0..50 {
        let k = 3.0 * i as f64 / 49.0;
        for n in [2, 3, 4] {
            for alpha in [0.0, 0.5, 1.0, 2.0] {
                let Ok(l1) = l1_threshold(k, n, alpha) else { continue };
                let lb = breaking_threshold(k, n, alpha).unwrap();
                assert!(l1 <= lb + 1e-12 * lb.abs().max(1.0), "k={k} N={n} alpha={alpha}: {l1} > {lb}");
            }
        }
    }
}

#[test]
fn classify_agrees_with_stability() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let dims = [(2, 0.0), (2, 1.0), (3, 0.0), (3, 0.5)];
    let mut tested = 0;
    while tested < 200 {
        let (n, alpha) = dims[rng.gen_range(0..dims.len())];
        let p = WeightParams::new(rng.gen_range(-0.8..2.5), rng.gen_range(-1.0..3.0), n, alpha).unwrap();
        if p.check_admissible().is_err() {
            continue;
        }
        let v = classify(&p).unwrap();
        let s = stability_verdict(&p).unwrap();
        if s.verdict != Stability::Marginal {
            assert_eq!(v.label == Label::SymmetryBreaking, s.verdict == Stability::Unstable, "{p:?}");
        }
        if matches!(v.label, Label::HalfBallOptimal(_)) {
            assert_ne!(s.verdict, Stability::Unstable, "{p:?}");
        }
        tested += 1;
    }
}

proptest! {
    #[test]
    fn horiuchi_reduction_lands_in_case_ii(
        l in -1.5f64..3.0,
        t in 0.0f64..1.0,
        n in 2usize..=4,
        alpha in 0.0f64..2.0,
    ) {
        let na = n as f64 + alpha;
        let lo = l * (na - 1.0) / na;
        let hi = 0f64.min(l + 1.0);
        prop_assume!(lo <= hi && l + na > 0.0);
        let k = lo + t * (hi - lo);
        prop_assume!(k + na - 1.0 > 0.0);
        let lp = horiuchi_exponent(k, l, n, alpha).unwrap();
        let v = classify(&WeightParams::new(0.0, lp, n, alpha).unwrap()).unwrap();
        prop_assert_eq!(v.label, Label::HalfBallOptimal(Case::II));
    }
}

#[test]
fn important_range_is_covered_from_three_dimensions() {
    for (n, alpha) in [(3, 0.0), (2, 1.0), (3, 0.5), (4, 1.0)] {
        for i in 0..=20 {
            let k = 0.05 * i as f64;
            let v = classify(&WeightParams::new(k, 0.0, n, alpha).unwrap()).unwrap();
            assert!(matches!(v.label, Label::HalfBallOptimal(_)), "k={k} N={n} alpha={alpha}");
        }
    }
    let undetermined = (1..20).any(|i| {
        let v = classify(&WeightParams::new(0.05 * i as f64, 0.0, 2, 0.5).unwrap()).unwrap();
        v.label == Label::Undetermined
    });
    assert!(undetermined);
}
