//! Property suites behind `isoperim verify`. Every property reports a margin:
//! the slack by which it holds, negative when it is violated.

use crate::output::Report;
use crate::random::{bump, gridded, star, sufficient};
use crate::{Failure, Suite};
use isoperim::counterex::*;
use isoperim::functional::*;
use isoperim::geometry::*;
use isoperim::orthant::*;
use isoperim::rearrange::*;
use isoperim::regions::{breaking_threshold, classify, Label};
use isoperim::spectral::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::f64::consts::FRAC_PI_2;

type Margin = Result<f64, String>;

#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub margin: Option<f64>,
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self.margin, Some(m) if m >= 0.0)
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn report(&self, suite: Suite, seed: u64) -> Report {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "suite": c.suite,
                    "property": c.name,
                    "passed": c.passed(),
                    "margin": c.margin,
                    "error": c.error,
                })
            })
            .collect();
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        Report {
            inputs: json!({ "suite": format!("{suite:?}").to_lowercase(), "seed": seed }),
            results: json!({ "checks": checks, "passed": self.checks.len() - failed, "failed": failed }),
            tolerances: json!({}),
            status: if failed == 0 { "ok".into() } else { "verify_failed".into() },
        }
    }
}

fn e2s(e: isoperim::Error) -> String {
    e.to_string()
}

fn wp(k: f64, l: f64, n: usize, alpha: f64) -> Result<WeightParams, String> {
    WeightParams::new(k, l, n, alpha).map_err(e2s)
}

/// Margin of a counted property: zero when nothing was violated.
fn violations(bad: usize) -> f64 {
    0.0 - bad as f64 + 0.0
}

fn mode(n: usize) -> AngularMode {
    AngularMode::for_dimension(n).expect("n >= 2")
}

struct Runner {
    suite: &'static str,
    out: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: &'static str, f: impl FnOnce() -> Margin) {
        let r = f();
        let c = match r {
            Ok(m) => Check { suite: self.suite, name, margin: Some(m), error: None },
            Err(e) => Check { suite: self.suite, name, margin: None, error: Some(e) },
        };
        match (&c.margin, &c.error) {
            (Some(m), _) => eprintln!("{} {}/{name}: margin {m:.3e}", if c.passed() { "PASS" } else { "FAIL" }, self.suite),
            (None, Some(e)) => eprintln!("FAIL {}/{name}: {e}", self.suite),
            _ => unreachable!(),
        }
        self.out.push(c);
    }
}

fn geometry(r: &mut Runner, rng: &mut ChaCha8Rng) {
    r.check("crad_matches_unit_half_ball", || {
        let vals = [-0.5, 0.0, 0.5, 1.0, 2.0];
        let mut worst: f64 = 0.0;
        for &k in &vals {
            for &l in &vals {
                for n in [2, 3] {
                    for alpha in [0.0, 0.5, 1.0] {
                        let p = wp(k, l, n, alpha)?;
                        let ball = StarSet::half_ball(mode(n), 17, 1.0).map_err(e2s)?;
                        let c = crad(&p).map_err(e2s)?;
                        worst = worst.max((rayleigh_ratio(&ball, &p).map_err(e2s)? / c - 1.0).abs());
                    }
                }
            }
        }
        Ok(1e-9 - worst)
    });
    r.check("ratio_is_scale_invariant", || {
        let mut worst: f64 = 0.0;
        for i in 0..30 {
            let n = 2 + i % 2;
            let p = wp(rng.gen_range(-0.5..2.0), rng.gen_range(-0.5..2.0), n, rng.gen_range(0.0..2.0))?;
            let m = star(rng, mode(n), 0.3);
            let base = rayleigh_ratio(&m, &p).map_err(e2s)?;
            for t in [0.5, 2.0, 10.0] {
                let s = rayleigh_ratio(&m.scaled(t).map_err(e2s)?, &p).map_err(e2s)?;
                worst = worst.max((s / base - 1.0).abs());
            }
        }
        Ok(1e-9 - worst)
    });
    r.check("main_inequality_in_sufficient_cases", || {
        let mut slack = f64::INFINITY;
        for n in [2, 3] {
            for alpha in [0.0, 0.5, 1.0] {
                for _ in 0..3 {
                    let p = sufficient(rng, n, alpha);
                    let c = crad(&p).map_err(e2s)?;
                    for _ in 0..20 {
                        let amp = rng.gen_range(0.01..0.5);
                        let m = star(rng, mode(n), amp);
                        slack = slack.min(rayleigh_ratio(&m, &p).map_err(e2s)? - c + 1e-7);
                    }
                }
            }
        }
        Ok(slack)
    });
    r.check("half_ball_minimises_measure_ratio", || {
        let mut slack = f64::INFINITY;
        for i in 0..50 {
            let n = 2 + i % 2;
            let alpha = rng.gen_range(0.0..2.0);
            let lp = rng.gen_range(-1.0..2.0);
            let l = lp + rng.gen_range(0.05..2.0);
            let p = wp(0.0, l, n, alpha)?;
            let m = star(rng, mode(n), 0.3);
            let v = measure_ratio(&m, l, lp, &p).map_err(e2s)?;
            let b = half_ball_measure_ratio(l, lp, n, alpha).map_err(e2s)?;
            slack = slack.min(v - b * (1.0 - 1e-10));
        }
        Ok(slack)
    });
}

fn spectral(r: &mut Runner, rng: &mut ChaCha8Rng) {
    r.check("wirtinger_eigenvalue_is_one_plus_alpha", || {
        let mut worst: f64 = 0.0;
        for alpha in [-0.9, -0.5, -0.1, 0.0, 0.5, 1.0, 2.0] {
            let e = wirtinger_min_eig(alpha, DEFAULT_GRID).map_err(e2s)?;
            worst = worst.max((e.min_eigenvalue - 1.0 - alpha).abs());
        }
        Ok(1e-3 - worst)
    });
    r.check("wirtinger_second_order_convergence", || {
        let mut lowest = f64::INFINITY;
        for alpha in [-0.5, 0.0, 1.0] {
            let o = observed_order(|g| Ok(wirtinger_min_eig(alpha, g)?.min_eigenvalue), 500).map_err(e2s)?;
            lowest = lowest.min(o);
        }
        Ok(lowest - 1.8)
    });
    r.check("poincare_eigenvalue_is_n_plus_alpha_minus_one", || {
        let mut worst: f64 = 0.0;
        for n in [2, 3] {
            for alpha in [0.0, 0.5, 1.0] {
                let e = poincare_min_eig(n, alpha, DEFAULT_GRID).map_err(e2s)?;
                worst = worst.max((e.min_eigenvalue - (n as f64 + alpha - 1.0)).abs());
            }
        }
        Ok(1e-3 - worst)
    });
    r.check("second_variation_of_sin", || {
        let u = AngularFunction::analytic(AngularMode::Planar, f64::sin, f64::cos);
        let j = second_variation(&u, &wp(0.0, 1.0, 2, 0.0)?).map_err(e2s)?;
        Ok(1e-9 - (j + FRAC_PI_2).abs())
    });
    r.check("stability_matches_breaking_threshold", || {
        let dims = [(2, 0.0), (2, 0.5), (3, 0.0), (3, 1.0)];
        let (mut tested, mut bad) = (0, 0);
        while tested < 200 {
            let (n, alpha) = dims[rng.gen_range(0..dims.len())];
            let p = wp(rng.gen_range(-0.8..2.5), rng.gen_range(-1.0..3.0), n, alpha)?;
            if p.check_admissible().is_err() {
                continue;
            }
            let s = stability_verdict(&p).map_err(e2s)?;
            let lb = breaking_threshold(p.k, n, alpha).map_err(e2s)?;
            match s.verdict {
                Stability::Marginal => {}
                Stability::Unstable if p.l <= lb => bad += 1,
                Stability::Stable if p.l > lb => bad += 1,
                _ => {}
            }
            tested += 1;
        }
        Ok(violations(bad))
    });
    r.check("halfline_stability_margin_in_band", || {
        let mut slack = f64::INFINITY;
        for alpha in [-0.9, -0.5, -0.1] {
            let m = halfline_stability_margin(alpha, DEFAULT_GRID).map_err(e2s)?;
            slack = slack.min((m + 1e-3).min(1e-2 - m));
        }
        Ok(slack)
    });
}

fn rearrange(r: &mut Runner, rng: &mut ChaCha8Rng) {
    r.check("schwarz_equimeasurable", || {
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            let n = 2 + i % 2;
            let p = wp(0.0, rng.gen_range(-0.5..2.0), n, rng.gen_range(0.0..2.0))?;
            let u = gridded(rng, mode(n), 60, 30);
            let s = schwarz_symmetrize(&u, &p).map_err(e2s)?;
            let top = u.values.iter().copied().fold(0.0, f64::max);
            for j in 0..20 {
                let t = top * j as f64 / 20.0;
                let a = u.distribution(t, &p).map_err(e2s)?;
                worst = worst.max((a - s.distribution(t)).abs() / a.max(f64::MIN_POSITIVE));
            }
        }
        Ok(1e-6 - worst)
    });
    r.check("schwarz_idempotent", || {
        let p = wp(0.0, 0.5, 2, 1.0)?;
        let mut bad = 0;
        for _ in 0..10 {
            let s = schwarz_symmetrize(&gridded(rng, mode(2), 50, 25), &p).map_err(e2s)?;
            if resymmetrize(&s).values != s.values {
                bad += 1;
            }
        }
        Ok(violations(bad))
    });
    r.check("hardy_littlewood", || {
        let mut slack = f64::INFINITY;
        for i in 0..30 {
            let n = 2 + i % 2;
            let p = wp(0.0, rng.gen_range(-0.5..2.0), n, rng.gen_range(0.0..2.0))?;
            let u = gridded(rng, mode(n), 40, 20);
            let v = gridded(rng, mode(n), 40, 20);
            let (lhs, rhs) = hardy_littlewood_check(&u, &v, &p).map_err(e2s)?;

            slack = slack.min(rhs * (1.0 + 1e-12) - lhs);
        }
        Ok(slack)
    });
    r.check("landes", || {
        let t: Vec<f64> = (0..=400).map(|i| i as f64 * 0.01).collect();
        let mut slack = f64::INFINITY;
        for i in 0..30 {
            let c = rng.gen_range(0.5..3.0);
            let w = rng.gen_range(0.2..1.0);
            let f: Vec<f64> = t.iter().map(|&x| bump((x - c).abs() / w)).collect();
            let out = decreasing_rearrange_1d(&t, &f, [0.0, 0.5, 2.0][i % 3]).map_err(e2s)?;
            slack = slack.min(out.landes_rhs * (1.0 + 1e-12) - out.landes_lhs);
        }
        Ok(slack)
    });
    r.check("polya_szego", || {
        let mut slack = f64::INFINITY;
        for i in 0..10 {
            let n = 2 + i % 2;
            let p = sufficient(rng, n, [0.0, 0.5, 1.0][i % 3]);
            let u = gridded(rng, mode(n), 120, 60);
            let c = polya_szego_check(&u, rng.gen_range(1.0..3.0), &p).map_err(e2s)?;
            slack = slack.min(c.lhs + c.tolerance - c.rhs);
        }
        Ok(slack)
    });
}

fn functional(r: &mut Runner, rng: &mut ChaCha8Rng) {
    r.check("thresholds_ordered", || {
        let mut slack = f64::INFINITY;
        for _ in 0..500 {
            let n = rng.gen_range(2..=5);
            let alpha = rng.gen_range(0.0..3.0);
            let p = rng.gen_range(1.05..4.0);
            let na = n as f64 + alpha;
            let qmax = if p < na { na * p / (na - p) } else { 4.0 * p };
            let q = p + rng.gen_range(0.01..1.0) * (qmax - p);
            let (a1, a2) = ckn_thresholds(p, q, n, alpha).map_err(e2s)?;
            slack = slack.min(a1.min(a2 - a1) + 1e-12);
            if p < na {
                let (a1, a2) = ckn_thresholds(p, na * p / (na - p), n, alpha).map_err(e2s)?;
                slack = slack.min(1e-12 - a1.abs().max(a2.abs()));
            }
        }
        Ok(slack)
    });
    r.check("hardy_witness_limit", || {
        let mut slack = f64::INFINITY;
        for (p, k, alpha, n) in [(2.0, 0.0, 0.0, 3), (1.5, 0.5, 1.0, 2), (3.0, 1.0, 0.5, 4), (2.5, -0.5, 2.0, 2)] {
            let h = hardy_constant(p, k, alpha, n).map_err(e2s)?;
            let mut prev = f64::INFINITY;
            for j in 0..10 {
                let w = hardy_witness_ratio(2f64.powi(-j), p, k, alpha, n).map_err(e2s)?;
                slack = slack.min(prev - w);
                prev = w;
            }
            let lim = hardy_witness_limit(p, k, alpha, n).map_err(e2s)?;
            slack = slack.min(1e-6 - (lim - h).abs());
        }
        Ok(slack)
    });
    r.check("ckn_mapping_identities", || {
        let mut slack = f64::INFINITY;
        for _ in 0..100 {
            let n = rng.gen_range(2..=4);
            let alpha = rng.gen_range(0.0..2.0);
            let p = rng.gen_range(1.1..3.0);
            let na = n as f64 + alpha;
            let q = if p < na { p + rng.gen_range(0.05..0.95) * (na * p / (na - p) - p) } else { 2.0 * p };
            let a = 1.0 - na / p + rng.gen_range(0.01..2.0);
            let c = CknParams::new(a, p, q, n, alpha).map_err(e2s)?;
            let (k, l) = ckn_to_isoperimetric(&c);
            let tol = 1e-12 * (1.0 + k.abs() + l.abs());
            slack = slack.min(tol - (c.b * q - l).abs()).min(tol - (a - k - l * (1.0 / p - 1.0)).abs());
        }
        Ok(slack)
    });
    r.check("ckn_dilation_invariance", || {
        let c = CknParams::new(0.0, 2.0, 4.0, 2, 1.0).map_err(e2s)?;
        let v = SampledRadial::sample(2.0, 200, |r| (1.0 - r * r / 4.0).powi(2) * (1.0 + 0.3 * r)).map_err(e2s)?;
        let e = ckn_functional_radial(&v, &c).map_err(e2s)?;
        let mut worst: f64 = 0.0;
        for t in [0.5, 2.0, 5.0] {
            let d = ckn_functional_radial(&v.dilated(t).map_err(e2s)?, &c).map_err(e2s)?;
            worst = worst.max((d / e - 1.0).abs());
        }
        Ok(1e-9 - worst)
    });
    r.check("ckn_minimizer_local_minimum", || {
        let c = CknParams::new(0.0, 2.0, 4.0, 2, 1.0).map_err(e2s)?;
        let u = CknMinimizer::new(&c).map_err(e2s)?;
        let e0 = srad(&c).map_err(e2s)?;
        let mut slack = f64::INFINITY;
        for _ in 0..10 {
            let m = rng.gen_range(0.1..4.0);
            let w = rng.gen_range(0.1..1.5);
            let eps = rng.gen_range(-0.03..0.03);
            let b = move |r: f64| bump((r - m).abs() / w);
            let db = move |r: f64| {
                let x = (r - m) / w;
                if x.abs() < 1.0 {
                    -6.0 * x / w * (1.0 - x * x).powi(2)
                } else {
                    0.0
                }
            };
            let pert = RadialClosure::new(move |r| u.value(r) + eps * b(r), move |r| u.derivative(r) + eps * db(r))
                .with_breaks(vec![(m - w).max(0.0), m + w]);
            slack = slack.min(ckn_functional_radial(&pert, &c).map_err(e2s)? - e0 + 1e-8);
        }
        Ok(slack)
    });
}

fn counterex(r: &mut Runner, rng: &mut ChaCha8Rng) {
    r.check("direct_and_uv_agree", || {
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let alpha = rng.gen_range(-0.95..-0.05);
            let a = 10f64.powf(rng.gen_range(-2.0..3.0));
            let rect = RectSet::new(a, a * (1.0 + 10f64.powf(rng.gen_range(-3.0..1.0))), alpha).map_err(e2s)?;
            let uv = rect_ratio_uv(rect.u(), rect.v(), alpha).map_err(e2s)?;
            worst = worst.max((rect_ratio(&rect) / uv - 1.0).abs());
        }
        Ok(1e-10 - worst)
    });
    r.check("first_term_vanishes_with_v", || {
        let mut slack = f64::INFINITY;
        for alpha in [-0.9, -0.5, -0.1] {
            let mut prev = f64::INFINITY;
            for j in 0..10 {
                let (first, _) = rect_ratio_terms(1.0, 10f64.powi(-j), alpha).map_err(e2s)?;
                slack = slack.min(prev - first);
                prev = first;
            }
        }
        Ok(slack)
    });
    r.check("vanishing_sequence_contract", || {
        let mut slack = f64::INFINITY;
        for alpha in [-0.9, -0.5, -0.1] {
            for eps in [1.0, 0.3, 0.1, 0.03] {
                slack = slack.min(eps - rect_ratio(&vanishing_sequence(alpha, eps).map_err(e2s)?));
            }
            let mut prev = f64::INFINITY;
            for j in 0..=6 {
                let q = rect_ratio(&vanishing_sequence(alpha, 2f64.powi(-j)).map_err(e2s)?);
                slack = slack.min(prev - q);
                prev = q;
            }
        }
        Ok(slack)
    });
}

fn orthant(r: &mut Runner, rng: &mut ChaCha8Rng) {
    r.check("constant_example", || {
        let a = MonomialWeight::new(vec![1.0, 1.0]).map_err(e2s)?;
        let d = orthant_constant(0.0, 0.0, 2, &a).map_err(e2s)?;
        Ok(1e-10 - (d - 0.5 * 8f64.powf(0.75)).abs())
    });
    r.check("random_sets_above_constant", || {
        let mut slack = f64::INFINITY;
        for i in 0..30 {
            let n = 2 + i % 2;
            let (k, l, a) = loop {
                let a = MonomialWeight::new((0..n).map(|_| rng.gen_range(0.05..1.5)).collect()).map_err(e2s)?;
                let (k, l) = (rng.gen_range(-0.3..2.0), rng.gen_range(-0.5..2.0));
                if matches!(orthant_classify(k, l, n, &a).map(|v| v.label), Ok(Label::HalfBallOptimal(_))) {
                    break (k, l, a);
                }
            };
            let d = orthant_constant(k, l, n, &a).map_err(e2s)?;
            let c: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.1..0.1)).collect();
            let m = if n == 2 {
                OrthantStarSet::new(2, move |t| 1.0 + c[0] * (2.0 * t[0]).cos() + c[1] * (4.0 * t[0]).sin())
            } else {
                OrthantStarSet::new(3, move |t| 1.0 + c[0] * (2.0 * t[0]).cos() + c[2] * t[0].sin() * (2.0 * t[1]).cos())
            }
            .map_err(e2s)?;
            slack = slack.min(orthant_rayleigh_ratio(&m, k, l, &a).map_err(e2s)? - d + 1e-6);
        }
        Ok(slack)
    });
    r.check("single_exponent_bridge", || {
        let mut bad = 0;
        let mut tested = 0;
        while tested < 100 {
            let alpha = rng.gen_range(0.0..2.0);
            let Ok(p) = WeightParams::new(rng.gen_range(-0.8..2.5), rng.gen_range(-1.0..3.0), 2, alpha) else { continue };
            let Ok(v) = classify(&p) else { continue };
            let a = MonomialWeight::new(vec![0.0, alpha]).map_err(e2s)?;
            if orthant_classify(p.k, p.l, 2, &a).map_err(e2s)? != v {
                bad += 1;
            }
            tested += 1;
        }
        Ok(violations(bad))
    });
}

pub fn run(suite: Suite, seed: u64) -> Result<Outcome, Failure> {
    let all: [(Suite, &'static str, fn(&mut Runner, &mut ChaCha8Rng)); 6] = [
        (Suite::Geometry, "geometry", geometry),
        (Suite::Spectral, "spectral", spectral),
        (Suite::Rearrange, "rearrange", rearrange),
        (Suite::Functional, "functional", functional),
        (Suite::Counterex, "counterex", counterex),
        (Suite::Orthant, "orthant", orthant),
    ];
    let mut out = Outcome::default();
    for (i, (s, name, f)) in all.into_iter().enumerate() {
        if suite == Suite::All || suite == s {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let mut r = Runner { suite: name, out: Vec::new() };
            f(&mut r, &mut rng);
            out.checks.extend(r.out);
        }
    }
    Ok(out)
}
