use isoperim::orthant::*;
use isoperim::regions::{classify, Label};
use isoperim::geometry::WeightParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sufficient(rng: &mut ChaCha8Rng, n: usize) -> (f64, f64, MonomialWeight) {
    loop {
        let a = MonomialWeight::new((0..n).map(|_| rng.gen_range(0.05..1.5)).collect()).unwrap();
        let k = rng.gen_range(-0.3..2.0);
        let l = rng.gen_range(-0.5..2.0);
        if let Ok(v) = orthant_classify(k, l, n, &a) {
            if matches!(v.label, Label::HalfBallOptimal(_)) {
                return (k, l, a);
            }
        }
    }
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> OrthantStarSet {
    let c: Vec<f64> = (0..4).map(|_| rng.gen_range(-0.08..0.08)).collect();
    let s = rng.gen_range(0.5..2.0);
    if n == 2 {
        OrthantStarSet::new(2, move |t| s * (1.0 + c[0] * (2.0 * t[0]).cos() + c[1] * (4.0 * t[0]).sin() + c[2] * t[0].sin()))
    } else {
        OrthantStarSet::new(3, move |t| {
            s * (1.0 + c[0] * (2.0 * t[0]).cos() + c[1] * t[0].sin() * (2.0 * t[1]).cos() + c[2] * (3.0 * t[1]).sin()
                + c[3] * t[0].cos() * t[1].sin())
        })
    }
    .unwrap()
}

#[test]
fn random_sets_score_above_the_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..40 {
        let n = 2 + i % 2;
        let (k, l, a) = random_sufficient(&mut rng, n);
        let d = orthant_constant(k, l, n, &a).unwrap();
        let m = random_set(&mut rng, n);
        let r = orthant_rayleigh_ratio(&m, k, l, &a).unwrap();
        assert!(r >= d - 1e-6, "k={k} l={l} a={a:?}: {r} < {d}");
    }
}

#[test]
fn single_exponent_matches_scalar_classification() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut tested = 0;
    while tested < 200 {
        let alpha = rng.gen_range(0.0..2.0);
        let k = rng.gen_range(-0.8..2.5);
        let l = rng.gen_range(-1.0..3.0);
        let Ok(w) = WeightParams::new(k, l, 2, alpha) else { continue };
        let Ok(scalar) = classify(&w) else { continue };
        let bridged = orthant_classify(k, l, 2, &MonomialWeight::new(vec![0.0, alpha]).unwrap()).unwrap();
        assert_eq!(bridged, scalar);
        tested += 1;
    }
}
