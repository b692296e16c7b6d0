#![allow(dead_code)]

use isoperim::geometry::{AngularMode, StarSet, WeightParams};
use isoperim::regions::{classify, Label};
use rand::Rng;
use std::f64::consts::PI;

/// A smooth positive radial function with a few random Fourier modes.
/// Axisymmetric profiles only use cos(2jθ) so they are even at the pole.
pub fn random_profile(rng: &mut impl Rng, mode: AngularMode, amp: f64) -> impl Fn(f64) -> f64 {
    let coeffs: Vec<(f64, f64)> = (1..=4).map(|_| (rng.gen_range(-amp..amp), rng.gen_range(0.0..PI))).collect();
    let scale = rng.gen_range(0.5..2.0);
    move |t: f64| {
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
    }
}

pub fn random_star(rng: &mut impl Rng, mode: AngularMode, amp: f64) -> StarSet {
    let f = random_profile(rng, mode, amp);
    StarSet::from_fn(mode, 97, f).unwrap()
}

/// A random admissible quadruple for which classify reports a sufficient case.
pub fn random_sufficient(rng: &mut impl Rng, n: usize, alpha: f64) -> WeightParams {
    loop {
        let k = rng.gen_range(-0.9..2.5);
        let l = rng.gen_range(-1.0..2.5);
        let Ok(p) = WeightParams::new(k, l, n, alpha) else { continue };
        if p.check_admissible().is_err() {
            continue;
        }
        if let Ok(v) = classify(&p) {
            if matches!(v.label, Label::HalfBallOptimal(_)) {
                return p;
            }
        }
    }
}

pub fn mode_for(n: usize) -> AngularMode {
    AngularMode::for_dimension(n).unwrap()
}

pub fn edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

pub fn bump(x: f64) -> f64 {
    if x < 1.0 {
        (1.0 - x * x).powi(3)
    } else {
        0.0
    }
}

/// Sum of 1–3 smooth bumps inside the half-disc of radius 1.4, sampled on an
/// nr × nt polar grid over [0, 1.5].
pub fn random_gridded(rng: &mut impl Rng, mode: AngularMode, nr: usize, nt: usize) -> isoperim::rearrange::GriddedFunction {
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
    isoperim::rearrange::GriddedFunction::sample(mode, edges(0.0, 1.5, nr), edges(lo, hi, nt), |r, t| {
        let (x, y) = (r * t.sin(), r * t.cos());
        bumps.iter().map(|(cx, cy, w, h)| h * bump(((x - cx).powi(2) + (y - cy).powi(2)).sqrt() / w)).sum()
    })
    .unwrap()
}

/// Random ray function on a shared z grid.
pub fn random_rays(rng: &mut impl Rng, mode: AngularMode, nt: usize, nz: usize) -> isoperim::rearrange::RayFunction {
    use isoperim::rearrange::{Ray, RayFunction};
    let (lo, hi) = mode.interval();
    let tg = edges(lo, hi, nt);
    let z = edges(0.0, 2.0, nz);
    let c0 = rng.gen_range(0.2..1.2);
    let c1 = rng.gen_range(-0.3..0.3);
    let w = rng.gen_range(0.2..0.7);
    let rays = tg
        .windows(2)
        .map(|e| {
            let t = 0.5 * (e[0] + e[1]);
            let c = c0 + c1 * (2.0 * t).cos();
            let vals = z.windows(2).map(|s| bump((0.5 * (s[0] + s[1]) - c).abs() / w)).collect();
            Ray::new(z.clone(), vals).unwrap()
        })
        .collect();
    RayFunction::new(mode, tg, rays).unwrap()
}
