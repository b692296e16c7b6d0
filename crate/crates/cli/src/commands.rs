use crate::output::Report;
use crate::{Command, EigenKind, Failure, Global, Perturbation, Quad, Shape};
use isoperim::counterex::*;
use isoperim::functional::*;
use isoperim::geometry::*;
use isoperim::orthant::*;
use isoperim::quad::halfline::HalfLineSpec;
use isoperim::quad::kappa;
use isoperim::rearrange::*;
use isoperim::regions::{classify, Verdict};
use isoperim::spectral::*;
use serde_json::{json, Value};

const STAR_NODES: usize = 257;

fn params(q: &Quad) -> Result<WeightParams, Failure> {
    Ok(WeightParams::new(q.k, q.l, q.n, q.alpha)?)
}

fn quad_inputs(q: &Quad) -> Value {
    json!({ "k": q.k, "l": q.l, "N": q.n, "alpha": q.alpha })
}

/// ∞ and NaN have no JSON form; they are written as null.
fn opt(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "label": v.label.name(),
        "constant_positive": v.constant_positive,
        "unique_optimizer": v.unique_optimizer,
        "on_positivity_boundary": v.on_positivity_boundary,
        "thresholds": {
            "l1": v.thresholds.l1,
            "l_break": v.thresholds.l_break,
            "l_positivity": v.thresholds.l_positivity,
        },
    })
}

fn half_line(g: &Global) -> HalfLineSpec {
    let mut s = HalfLineSpec::default();
    if let Some(t) = g.tol {
        s.rel_tol = t;
    }
    s
}

fn star_set(shape: &Shape, p: &WeightParams, g: &Global) -> Result<(StarSet, Value), Failure> {
    let mode = p.mode();
    match &shape.file {
        Some(path) => {
            let mut rd = csv::Reader::from_path(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let (mut t, mut m) = (Vec::new(), Vec::new());
            for rec in rd.records() {
                let rec = rec.map_err(|e| Failure::usage(e.to_string()))?;
                let get = |i: usize| -> Result<f64, Failure> {
                    rec.get(i)
                        .and_then(|s| s.trim().parse::<f64>().ok())
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| Failure::usage("expected two finite numeric columns theta,m"))
                };
                t.push(get(0)?);
                m.push(get(1)?);
            }
            let nodes = t.len();
            Ok((StarSet::new(mode, t, m)?, json!({ "file": path.display().to_string(), "nodes": nodes })))
        }
        None => {
            let nodes = g.grid.unwrap_or(STAR_NODES);
            let (amp, freq) = (shape.amp, shape.freq);
            let m = StarSet::from_fn(mode, nodes, |t| 1.0 + amp * (freq * t).cos())?;
            Ok((m, json!({ "amp": amp, "freq": freq, "nodes": nodes })))
        }
    }
}

fn ray_family(q: &Quad, c0: f64, c1: f64, width: f64, nz: usize) -> Result<RayFunction, Failure> {
    let mode = AngularMode::for_dimension(q.n)?;
    let (lo, hi) = mode.interval();
    let nt = 24;
    let tg: Vec<f64> = (0..=nt).map(|i| lo + (hi - lo) * i as f64 / nt as f64).collect();
    let zmax = c0 + c1.abs() + width + 0.5;
    let z: Vec<f64> = (0..=nz).map(|i| zmax * i as f64 / nz as f64).collect();
    let bump = |x: f64| if x < 1.0 { (1.0 - x * x).powi(3) } else { 0.0 };
    let rays = tg
        .windows(2)
        .map(|e| {
            let c = c0 + c1 * (e[0] + e[1]).cos();
            let vals = z.windows(2).map(|s| bump((0.5 * (s[0] + s[1]) - c).abs() / width)).collect();
            Ray::new(z.clone(), vals)
        })
        .collect::<isoperim::Result<Vec<_>>>()?;
    Ok(RayFunction::new(mode, tg, rays)?)
}

pub fn run(cmd: Command, g: &Global) -> Result<Report, Failure> {
    match cmd {
        Command::Classify(q) => {
            let p = params(&q)?;
            let v = classify(&p)?;
            let mut results = verdict_json(&v);
            if p.check_admissible().is_ok() {
                results["crad"] = json!(crad(&p)?);
            }
            Ok(Report::ok(quad_inputs(&q), results, json!({ "marginal_band": MARGINAL_BAND })))
        }
        Command::Crad(q) => {
            let p = params(&q)?;
            p.check_admissible()?;
            Ok(Report::ok(quad_inputs(&q), json!({ "crad": crad(&p)? }), json!({})))
        }
        Command::Rayleigh { quad, shape } => {
            let p = params(&quad)?;
            let (m, shape_in) = star_set(&shape, &p, g)?;
            let r = rayleigh_ratio(&m, &p)?;
            let c = crad(&p)?;
            let mut inputs = quad_inputs(&quad);
            inputs["shape"] = shape_in;
            let results = json!({
                "ratio": r,
                "crad": c,
                "excess": r - c,
                "volume": weighted_volume(&m, p.l, &p)?,
                "perimeter": weighted_perimeter(&m, p.k, &p)?,
                "label": classify(&p).map(|v| v.label.name()).ok(),
            });
            Ok(Report::ok(inputs, results, json!({ "angular_nodes": m.theta_grid.len() })))
        }
        Command::Symmetrize { quad, shape } => {
            let p = params(&quad)?;
            let (m, shape_in) = star_set(&shape, &p, g)?;
            let radius = set_symmetrize(&m, &p)?;
            let per = weighted_perimeter(&m, p.k, &p)?;
            let ball_per = kappa(p.n, p.alpha)? * radius.powf(p.perimeter_degree());
            let mut inputs = quad_inputs(&quad);
            inputs["shape"] = shape_in;
            let results = json!({
                "radius": radius,
                "volume": weighted_volume(&m, p.l, &p)?,
                "perimeter": per,
                "half_ball_perimeter": ball_per,
                "perimeter_decrease": per - ball_per,
                "ratio": rayleigh_ratio(&m, &p)?,
                "crad": crad(&p)?,
            });
            Ok(Report::ok(inputs, results, json!({ "angular_nodes": m.theta_grid.len() })))
        }
        Command::Starshape { quad, c0, c1, width, a } => {
            let p = params(&quad)?;
            p.check_admissible()?;
            let nz = g.grid.unwrap_or(200);
            let v = ray_family(&quad, c0, c1, width, nz)?;
            let w = starshaped_rearrange(&v, quad.n)?;
            let mut worst: f64 = 0.0;
            for j in 0..20 {
                let t = j as f64 / 20.0;
                let (x, y) = (v.distribution(t, quad.n)?, w.distribution(t, quad.n)?);
                worst = worst.max((x - y).abs() / x.max(f64::MIN_POSITIVE));
            }
            let c = (p.dim() + p.alpha - 1.0) / p.perimeter_degree();
            let a = a.unwrap_or(c * c);
            let mut inputs = quad_inputs(&quad);
            inputs["family"] = json!({ "c0": c0, "c1": c1, "width": width, "A": a });
            let interp = if p.k >= 0.0 {
                let (lhs, rhs) = interpolation_bound_check(&v, a, &p)?;
                json!({ "lhs": lhs, "rhs": rhs, "holds": lhs >= rhs * (1.0 - 1e-12) })
            } else {
                Value::Null
            };
            let results = json!({
                "distribution_max_relative_error": worst,
                "levels": 20,
                "interpolation_bound": interp,
            });
            Ok(Report::ok(inputs, results, json!({ "z_cells": nz, "angular_cells": 24 })))
        }
        Command::Secvar { quad, u, freq } => {
            let p = params(&quad)?;
            let mode = p.mode();
            let f = match u {
                Perturbation::Sin => AngularFunction::analytic(mode, move |t| (freq * t).sin(), move |t| freq * (freq * t).cos()),
                Perturbation::Cos => AngularFunction::analytic(mode, move |t| (freq * t).cos(), move |t| -freq * (freq * t).sin()),
            };
            let (s1, s2) = volume_constraint_coeffs(&f, &p)?;
            let j = second_variation(&f, &p)?;
            let grid = g.grid.unwrap_or(DEFAULT_GRID);
            let s = stability_verdict_with_grid(&p, grid)?;
            let mut inputs = quad_inputs(&quad);
            inputs["u"] = json!(match u {
                Perturbation::Sin => format!("sin({freq} theta)"),
                Perturbation::Cos => format!("cos({freq} theta)"),
            });
            let results = json!({
                "second_variation": j,
                "s1": s1,
                "s2": s2,
                "stability": format!("{:?}", s.verdict),
                "coefficient": s.coefficient,
                "poincare": s.poincare,
                "relative_gap": s.relative_gap,
            });
            Ok(Report::ok(inputs, results, json!({ "eigen_grid": grid, "marginal_band": MARGINAL_BAND })))
        }
        Command::Eigen { kind, alpha, n } => {
            let grid = g.grid.unwrap_or(DEFAULT_GRID);
            let (e, expected, inputs) = match kind {
                EigenKind::Wirtinger => {
                    (wirtinger_min_eig(alpha, grid)?, 1.0 + alpha, json!({ "kind": "wirtinger", "alpha": alpha }))
                }
                EigenKind::Poincare => (
                    poincare_min_eig(n, alpha, grid)?,
                    n as f64 + alpha - 1.0,
                    json!({ "kind": "poincare", "alpha": alpha, "N": n }),
                ),
            };
            let mut results = json!({
                "min_eigenvalue": e.min_eigenvalue,
                "expected": expected,
                "error": e.min_eigenvalue - expected,
                "azimuthal_degree": e.azimuthal_degree,
            });
            if kind == EigenKind::Wirtinger {
                results["correlation_with_sin"] = json!(e.correlation_with(f64::sin));
            }
            Ok(Report::ok(inputs, results, json!({ "grid": grid, "residual": e.residual })))
        }
        Command::Hardy { p, k, alpha, n, eps } => {
            let c = hardy_constant(p, k, alpha, n)?;
            let lim = hardy_witness_limit(p, k, alpha, n)?;
            let mut results = json!({ "constant": c, "witness_limit": lim, "limit_error": lim - c });
            let mut tol = json!({ "richardson_levels": 4 });
            if let Some(eps) = eps {
                let w = hardy_witness_ratio(eps, p, k, alpha, n)?;
                let oracle = hardy_witness_quadrature(eps, p, k, alpha, n)?;
                results["witness_ratio"] = json!(w);
                results["witness_quadrature"] = json!(oracle);
                tol["closed_form_vs_quadrature"] = json!(((w - oracle) / w).abs());
            }
            Ok(Report::ok(json!({ "p": p, "k": k, "alpha": alpha, "N": n, "eps": eps }), results, tol))
        }
        Command::Ckn { a, p, q, n, alpha } => {
            let c = CknParams::new(a, p, q, n, alpha)?;
            let (k, l) = ckn_to_isoperimetric(&c);
            let mut results = json!({ "b": c.b, "p_star": opt(c.p_star), "k": k, "l": l });
            match ckn_symmetry_range(&c) {
                Ok(r) => {
                    results["a1"] = json!(r.a1);
                    results["a2"] = json!(r.a2);
                    results["range"] = json!(format!("{:?}", r.range));
                    results["mapped_label"] = json!(r.mapped.map(|l| l.name()));
                }
                Err(e) => results["range"] = json!(format!("not computed: {e}")),
            }
            match CknMinimizer::new(&c) {
                Ok(u) => results["minimizer_exponent"] = json!(u.exponent()),
                Err(e) => results["minimizer"] = json!(format!("excluded: {e}")),
            }
            if p == q || p > 1.0 && p < q {
                results["srad"] = json!(srad_with(&c, half_line(g))?);
            }
            let tol = json!({ "half_line_rel_tol": half_line(g).rel_tol });
            Ok(Report::ok(json!({ "a": a, "p": p, "q": q, "N": n, "alpha": alpha }), results, tol))
        }
        Command::Counterexample { alpha, eps } => {
            let r = vanishing_sequence(alpha, eps)?;
            let (t1, t2) = rect_ratio_terms(r.u(), r.v(), alpha)?;
            let ratio = rect_ratio(&r);
            let results = json!({
                "a": r.a,
                "b": r.b,
                "width": r.width,
                "U": r.u(),
                "V": r.v(),
                "area": rect_area(&r),
                "perimeter": rect_perimeter(&r),
                "ratio": ratio,
                "first_term": t1,
                "second_term": t2,
                "below_eps": ratio < eps,
            });
            let tol = json!({ "direct_vs_uv": ((ratio - (t1 + t2)) / ratio).abs() });
            Ok(Report::ok(json!({ "alpha": alpha, "eps": eps }), results, tol))
        }
        Command::Orthant { k, l, a } => {
            let n = a.len();
            let w = MonomialWeight::new(a.clone())?;
            let mut results = verdict_json(&orthant_classify(k, l, n, &w)?);
            results["kappa"] = json!(orthant_kappa(n, &w)?);
            results["constant"] = json!(orthant_constant(k, l, n, &w)?);
            Ok(Report::ok(json!({ "k": k, "l": l, "N": n, "a": a }), results, json!({})))
        }
        Command::Sweep(_) | Command::Verify { .. } => unreachable!("handled by the caller"),
    }
}
