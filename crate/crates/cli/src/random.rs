//! Random test objects for the property suites.

use isoperim::geometry::{AngularMode, StarSet, WeightParams};
use isoperim::rearrange::GriddedFunction;
use isoperim::regions::{classify, Label};
use rand::Rng;
use std::f64::consts::PI;

pub fn bump(x: f64) -> f64 {
    if x < 1.0 {
        (1.0 - x * x).powi(3)
    } else {
        0.0
    }
}

fn edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

/// exp of a few random Fourier modes; only cos(2jθ) in the axisymmetric case.
pub fn star(rng: &mut impl Rng, mode: AngularMode, amp: f64) -> StarSet {
    let coeffs: Vec<(f64, f64)> = (1..=4).map(|_| (rng.gen_range(-amp..amp), rng.gen_range(0.0..PI))).collect();
    let scale = rng.gen_range(0.5..2.0);
    StarSet::from_fn(mode, 97, |t| {
        let s: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(j, (c, ph))| {
                let j = (j + 1) as f64;
                match mode {
                    AngularMode::Planar => c * (j * t + ph).cos(),
                    AngularMode::Axisymmetric => c * (2.0 * j * t).cos(),
                }
            })
            .sum();
        scale * s.exp()
    })
    .expect("positive profile")
}

pub fn sufficient(rng: &mut impl Rng, n: usize, alpha: f64) -> WeightParams {
    loop {
        let Ok(p) = WeightParams::new(rng.gen_range(-0.9..2.5), rng.gen_range(-1.0..2.5), n, alpha) else { continue };
        if p.check_admissible().is_err() {
            continue;
        }
        if matches!(classify(&p).map(|v| v.label), Ok(Label::HalfBallOptimal(_))) {
            return p;
        }
    }
}

/// One to three smooth bumps inside radius 1.4 on an nr × nt polar grid.
pub fn gridded(rng: &mut impl Rng, mode: AngularMode, nr: usize, nt: usize) -> GriddedFunction {
    let count = rng.gen_range(1..=3);
    let bumps: Vec<(f64, f64, f64, f64)> = (0..count)
        .map(|_| {
            let w = rng.gen_range(0.3..0.6);
            let rho: f64 = rng.gen_range(0.0..1.4 - w);
            // In the axisymmetric case θ is measured from the x_N axis, so keep x ≥ 0.
            let phi: f64 = match mode {
                AngularMode::Planar => rng.gen_range(-1.2..1.2),
                AngularMode::Axisymmetric => rng.gen_range(0.0..1.2),
            };
            (rho * phi.sin(), rho * phi.cos(), w, rng.gen_range(0.3..1.0))
        })
        .collect();
    let (lo, hi) = mode.interval();
    GriddedFunction::sample(mode, edges(0.0, 1.5, nr), edges(lo, hi, nt), |r, t| {
        let (x, y) = (r * t.sin(), r * t.cos());
        bumps.iter().map(|(cx, cy, w, h)| h * bump(((x - cx).powi(2) + (y - cy).powi(2)).sqrt() / w)).sum()
    })
    .expect("valid grid")
}
