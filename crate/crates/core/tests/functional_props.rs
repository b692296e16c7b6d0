use isoperim::functional::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_main_case(rng: &mut ChaCha8Rng) -> (f64, f64, usize, f64) {
    loop {
        let n = rng.gen_range(2..=5);
        let alpha = rng.gen_range(0.0..3.0);
        let p = rng.gen_range(1.05..4.0);
        let na = n as f64 + alpha;
        let qmax = if p < na { na * p / (na - p) } else { 4.0 * p };
        let q = rng.gen_range(p..qmax);
        if q > p * (1.0 + 1e-6) {
            return (p, q, n, alpha);
        }
    }
}

#[test]
fn thresholds_are_ordered_and_meet_at_the_critical_exponent() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let (p, q, n, alpha) = random_main_case(&mut rng);
        let (a1, a2) = ckn_thresholds(p, q, n, alpha).unwrap();
        assert!(a1 >= -1e-12 && a2 >= a1 - 1e-12, "{p} {q} {n} {alpha}: {a1} {a2}");
        let na = n as f64 + alpha;
        if p < na {
            let (a1, a2) = ckn_thresholds(p, na * p / (na - p), n, alpha).unwrap();
            assert!(a1.abs() < 1e-12 && a2.abs() < 1e-12, "{a1} {a2}");
        }
    }
}

#[test]
fn hardy_witness_decreases_to_the_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 12 {
        let n = rng.gen_range(2..=4);
        let alpha = rng.gen_range(0.0..2.0);
        let p = rng.gen_range(1.2..3.0);
        let k = rng.gen_range(-0.5..2.0);
        let Ok(h) = hardy_constant(p, k, alpha, n) else { continue };
        if !(h > 1e-3) {
            continue;
        }
        let mut prev = f64::INFINITY;
        for j in 0..12 {
            let r = hardy_witness_ratio(2f64.powi(-j), p, k, alpha, n).unwrap();
            assert!(r < prev);
            prev = r;
        }
        let lim = hardy_witness_limit(p, k, alpha, n).unwrap();
        assert!((lim - h).abs() <= 1e-6 * h.max(1.0), "{lim} vs {h}");
        done += 1;
    }
}

proptest! {
    #[test]
    fn ckn_mapping_identities(
        p in 1.1f64..3.0,
        dq in 0.05f64..0.95,
        n in 2usize..=4,
        alpha in 0.0f64..2.0,
        t in 0.01f64..0.99,
    ) {
        let na = n as f64 + alpha;
        let q = if p < na { p + dq * (na * p / (na - p) - p) } else { p * (1.0 + 3.0 * dq) };
        let (_, a2) = ckn_thresholds(p, q, n, alpha).unwrap();
        let amin = 1.0 - na / p;
        let a = amin + t * (a2 + 1.0 - amin);
        let c = CknParams::new(a, p, q, n, alpha).unwrap();
        let rep = ckn_symmetry_range(&c).unwrap();
        let tol = 1e-12 * (1.0 + rep.k.abs() + rep.l.abs());
        prop_assert!((c.b * q - rep.l).abs() <= tol);
        prop_assert!((a - (rep.k + rep.l * (1.0 / p - 1.0))).abs() <= tol);
        prop_assert_eq!(rep.range == SymmetryRange::GuaranteedRadial, a <= a2);
    }
}

#[test]
fn ckn_functional_is_dilation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let n = rng.gen_range(2..=3);
        let alpha = rng.gen_range(0.0..1.5);
        let p = rng.gen_range(1.5..2.5);
        let na = n as f64 + alpha;
        let q = if p < na { p + 0.5 * (na * p / (na - p) - p) } else { 2.0 * p };
        let a = rng.gen_range(0.0..0.5);
        let c = CknParams::new(a, p, q, n, alpha).unwrap();
        let w = rng.gen_range(0.1..0.5);
        let v = SampledRadial::sample(1.0, 400, |r| {
            let s = 1.0 - r * r;
            s * s * s * (1.0 + w * (3.0 * r).cos())
        })
        .unwrap();
        let e = ckn_functional_radial(&v, &c).unwrap();
        for t in [0.25, 3.0] {
            let d = v.dilated(t).unwrap();
            let et = ckn_functional_radial(&d, &c).unwrap();
            assert!((et - e).abs() <= 1e-9 * e, "{e} {et}");
        }
    }
}
