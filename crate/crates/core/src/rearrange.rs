//! Rearrangements and the inequalities built on them.
//!
//! Gridded data are read as piecewise-constant functions: every cell of a
//! [`GriddedFunction`] or [`Ray`] carries one value. Level sets are unions of
//! cells, so distribution functions are exact sums of cell measures and the
//! rearranged profiles are equimeasurable with their inputs up to rounding.

use crate::error::{domain, Error, Result};
use crate::fd::slopes;
use crate::geometry::{weighted_volume, AngularMode, StarSet, WeightParams};
use crate::quad::{kappa, HemisphereMeasure};
use crate::regions::{classify, Label};

/// A non-negative function on the half-space, constant on polar cells
/// [r_i, r_{i+1}) × [θ_j, θ_{j+1}).
#[derive(Debug, Clone)]
pub struct GriddedFunction {
    pub mode: AngularMode,
    /// Radial cell edges, starting at r ≥ 0.
    pub r_grid: Vec<f64>,
    /// Angular cell edges covering the whole parameter interval.
    pub theta_grid: Vec<f64>,
    /// Cell values, row-major: `values[i * n_theta + j]` for radial cell i.
    pub values: Vec<f64>,
    /// The outermost ring of cells vanishes.
    pub compact_support: bool,
}

fn check_edges(e: &[f64], what: &str) -> Result<()> {
    if e.len() < 2 || e.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Grid(format!("{what} edges must be strictly increasing")));
    }
    Ok(())
}

fn centres(e: &[f64]) -> Vec<f64> {
    e.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
}

/// ∫_{a}^{b} r^{s−1} dr for every radial cell.
fn radial_moments(edges: &[f64], s: f64) -> Result<Vec<f64>> {
    if !(s > 0.0) && edges[0] == 0.0 {
        return Err(domain("radial weight is not integrable at the origin"));
    }
    Ok(edges
        .windows(2)
        .map(|w| if s == 0.0 { (w[1] / w[0]).ln() } else { (w[1].powf(s) - w[0].powf(s)) / s })
        .collect())
}

fn angular_masses(measure: &HemisphereMeasure, edges: &[f64]) -> Vec<f64> {
    edges.windows(2).map(|w| measure.integrate_piece(w[0], w[1], 8, |_| 1.0)).collect()
}

impl GriddedFunction {
    pub fn new(mode: AngularMode, r_grid: Vec<f64>, theta_grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_edges(&r_grid, "radial")?;
        if r_grid[0] < 0.0 {
            return Err(Error::Grid("radii must be non-negative".into()));
        }
        crate::geometry::check_angular_grid(mode, &theta_grid, 2)?;
        let (nr, nt) = (r_grid.len() - 1, theta_grid.len() - 1);
        if values.len() != nr * nt {
            return Err(Error::Grid("values must have one entry per cell".into()));
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(domain("values must be finite and non-negative"));
        }
        let compact_support = values[(nr - 1) * nt..].iter().all(|v| *v == 0.0);
        Ok(GriddedFunction { mode, r_grid, theta_grid, values, compact_support })
    }

    /// Samples `f(r, θ)` at the cell centres.
    pub fn sample(
        mode: AngularMode,
        r_grid: Vec<f64>,
        theta_grid: Vec<f64>,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let rc = centres(&r_grid);
        let tc = centres(&theta_grid);
        let values = rc.iter().flat_map(|&r| tc.iter().map(move |&t| (r, t))).map(|(r, t)| f(r, t)).collect();
        GriddedFunction::new(mode, r_grid, theta_grid, values)
    }

    pub fn n_r(&self) -> usize {
        self.r_grid.len() - 1
    }

    pub fn n_theta(&self) -> usize {
        self.theta_grid.len() - 1
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_theta() + j]
    }

    pub fn r_centres(&self) -> Vec<f64> {
        centres(&self.r_grid)
    }

    pub fn theta_centres(&self) -> Vec<f64> {
        centres(&self.theta_grid)
    }

    /// μ_{e,α} of every cell, row-major.
    pub fn cell_measures(&self, e: f64, p: &WeightParams) -> Result<Vec<f64>> {
        self.mode.check_dimension(p.n)?;
        let rad = radial_moments(&self.r_grid, e + p.dim() + p.alpha)?;
        let ang = angular_masses(&p.measure(), &self.theta_grid);
        Ok(rad.iter().flat_map(|a| ang.iter().map(move |b| a * b)).collect())
    }

    /// μ_{l,α}({u > t}).
    pub fn distribution(&self, t: f64, p: &WeightParams) -> Result<f64> {
        let w = self.cell_measures(p.l, p)?;
        Ok(self.values.iter().zip(&w).filter(|(v, _)| **v > t).map(|(_, w)| w).sum())
    }

    /// ∫ G(u, |∇u|) dμ_{e,α} with centred differences at the cell centres.
    pub fn integrate_gradient(&self, e: f64, p: &WeightParams, g: impl Fn(f64, f64) -> f64) -> Result<f64> {
        let w = self.cell_measures(e, p)?;
        let grad = self.gradient_norms()?;
        Ok(self.values.iter().zip(&grad).zip(&w).map(|((u, d), w)| g(*u, *d) * w).sum())
    }

    /// |∇u| at each cell centre.
    pub fn gradient_norms(&self) -> Result<Vec<f64>> {
        let (nr, nt) = (self.n_r(), self.n_theta());
        if nr < 3 || nt < 3 {
            return Err(Error::Grid("gradients need at least 3 cells in each direction".into()));
        }
        let rc = self.r_centres();
        let tc = self.theta_centres();
        let mut ur = vec![0.0; nr * nt];
        let mut ut = vec![0.0; nr * nt];
        let mut col = vec![0.0; nr];
        for j in 0..nt {
            for i in 0..nr {
                col[i] = self.at(i, j);
            }
            for (i, d) in slopes(&rc, &col).into_iter().enumerate() {
                ur[i * nt + j] = d;
            }
        }
        for i in 0..nr {
            let row = &self.values[i * nt..(i + 1) * nt];
            for (j, d) in slopes(&tc, row).into_iter().enumerate() {
                ut[i * nt + j] = d / rc[i];
            }
        }
        Ok(ur.iter().zip(&ut).map(|(a, b)| a.hypot(*b)).collect())
    }

    /// Grid spacing relative to the domain: max(Δr / r_max, Δθ).
    pub fn mesh_size(&self) -> f64 {
        let rmax = self.r_grid[self.r_grid.len() - 1];
        let dr = self.r_grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max) / rmax;
        let dt = self.theta_grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        dr.max(dt)
    }
}

/// A radial non-increasing step function: `values[i]` on
/// [r_grid[i], r_grid[i+1]), zero beyond the last edge.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    /// Step edges, `r_grid[0] = 0`, one more entry than `values`.
    pub r_grid: Vec<f64>,
    pub values: Vec<f64>,
    /// κ(N, α) and l + N + α of the measure the profile was built for.
    kappa: f64,
    degree: f64,
}

impl RadialProfile {
    pub fn value_at(&self, r: f64) -> f64 {
        let i = self.r_grid.partition_point(|&e| e <= r);
        if i == 0 || i > self.values.len() {
            return if i == 0 { self.values.first().copied().unwrap_or(0.0) } else { 0.0 };
        }
        self.values[i - 1]
    }

    fn ball(&self, r: f64) -> f64 {
        self.kappa * r.powf(self.degree) / self.degree
    }

    /// μ_{l,α}({u* > t}).
    pub fn distribution(&self, t: f64) -> f64 {
        let n = self.values.iter().take_while(|v| **v > t).count();
        self.ball(self.r_grid[n])
    }

    /// Continuous interpolant through (R̄_j, v_j), with R̄_j the radius at the
    /// middle (in measure) of step j, and zero at the outer edge.
    pub fn interpolated(&self, r: f64) -> f64 {
        let pts = self.midpoints();
        if pts.is_empty() || r <= pts[0].0 {
            return self.values.first().copied().unwrap_or(0.0);
        }
        let i = pts.partition_point(|p| p.0 <= r);
        if i >= pts.len() {
            return 0.0;
        }
        let (a, b) = (pts[i - 1], pts[i]);
        a.1 + (b.1 - a.1) * (r - a.0) / (b.0 - a.0)
    }

    fn midpoints(&self) -> Vec<(f64, f64)> {
        let mut pts: Vec<(f64, f64)> = self
            .values
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let m = 0.5 * (self.ball(self.r_grid[j]) + self.ball(self.r_grid[j + 1]));
                ((self.degree * m / self.kappa).powf(1.0 / self.degree), *v)
            })
            .collect();
        if let Some(&last) = self.r_grid.last() {
            pts.push((last, 0.0));
        }
        pts
    }
}

/// Builds the decreasing rearrangement of (value, measure) cells against the
/// measure κ r^{s−1} dr.
fn rearrange_cells(mut cells: Vec<(f64, f64)>, kap: f64, s: f64) -> RadialProfile {
    cells.retain(|c| c.0 > 0.0 && c.1 > 0.0);
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut r_grid = vec![0.0];
    let mut values: Vec<f64> = Vec::new();
    let mut cum = 0.0;
    for (v, w) in cells {
        cum += w;
        let r = (s * cum / kap).powf(1.0 / s);
        if values.last() == Some(&v) {
            *r_grid.last_mut().unwrap() = r;
        } else {
            values.push(v);
            r_grid.push(r);
        }
    }
    RadialProfile { r_grid, values, kappa: kap, degree: s }
}

/// Radius R of the half-ball with μ_{l,α}(B_R^+) = μ_{l,α}(M).
pub fn set_symmetrize(m: &StarSet, p: &WeightParams) -> Result<f64> {
    let s = p.volume_degree();
    if !(s > 0.0) {
        return Err(domain("l+N+alpha must be positive"));
    }
    let vol = weighted_volume(m, p.l, p)?;
    if !(vol > 0.0 && vol.is_finite()) {
        return Err(domain("measure of the set must be positive and finite"));
    }
    Ok((s * vol / kappa(p.n, p.alpha)?).powf(1.0 / s))
}

/// The μ_{l,α}-symmetrization u*.
///
/// ```
/// use isoperim::{geometry::{AngularMode, WeightParams}, rearrange::*};
/// let r: Vec<f64> = (0..=300).map(|i| i as f64 * 0.01).collect();
/// let t: Vec<f64> = (0..=16).map(|j| -1.5707963267948966 + j as f64 * std::f64::consts::PI / 16.0).collect();
/// let u = GriddedFunction::sample(AngularMode::Planar, r, t, |r, _| if r > 1.0 && r < 2.0 { 1.0 } else { 0.0 }).unwrap();
/// let star = schwarz_symmetrize(&u, &WeightParams::new(0.0, 0.0, 2, 0.0).unwrap()).unwrap();
/// assert!((star.r_grid[1] - 3f64.sqrt()).abs() < 1e-9);
/// ```
pub fn schwarz_symmetrize(u: &GriddedFunction, p: &WeightParams) -> Result<RadialProfile> {
    let s = p.volume_degree();
    if !(s > 0.0) {
        return Err(domain("l+N+alpha must be positive"));
    }
    let w = u.cell_measures(p.l, p)?;
    let cells = u.values.iter().copied().zip(w).collect();
    Ok(rearrange_cells(cells, kappa(p.n, p.alpha)?, s))
}

/// Symmetrizes a profile again, reading its steps as annuli.
pub fn resymmetrize(u: &RadialProfile) -> RadialProfile {
    let cells = u
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| (*v, u.ball(u.r_grid[j + 1]) - u.ball(u.r_grid[j])))
        .collect();
    rearrange_cells(cells, u.kappa, u.degree)
}

/// One ray of a [`RayFunction`]: values on cells [z_i, z_{i+1}).
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    pub z_grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl Ray {
    pub fn new(z_grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_edges(&z_grid, "ray")?;
        if z_grid[0] < 0.0 || values.len() + 1 != z_grid.len() {
            return Err(Error::Grid("ray needs non-negative edges and one value per cell".into()));
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(domain("ray values must be finite and non-negative"));
        }
        Ok(Ray { z_grid, values })
    }

    pub fn value_at(&self, z: f64) -> f64 {
        let i = self.z_grid.partition_point(|&e| e <= z);
        if i == 0 || i > self.values.len() {
            return 0.0;
        }
        self.values[i - 1]
    }

    /// Lebesgue measure along the ray, ∫ z^{N−1} dz, of {v > t}.
    pub fn distribution(&self, t: f64, n: usize) -> f64 {
        let d = n as f64;
        self.z_grid
            .windows(2)
            .zip(&self.values)
            .filter(|(_, v)| **v > t)
            .map(|(w, _)| (w[1].powf(d) - w[0].powf(d)) / d)
            .sum()
    }

    /// ∫ F(v) z^{N−1} dz.
    pub fn integral(&self, n: usize, f: impl Fn(f64) -> f64) -> f64 {
        let d = n as f64;
        self.z_grid
            .windows(2)
            .zip(&self.values)
            .map(|(w, v)| f(*v) * (w[1].powf(d) - w[0].powf(d)) / d)
            .sum()
    }
}

/// A function on the half-space given ray by ray. `theta_grid` holds the
/// angular cell edges; ray j represents the cell [θ_j, θ_{j+1}).
#[derive(Debug, Clone)]
pub struct RayFunction {
    pub mode: AngularMode,
    pub theta_grid: Vec<f64>,
    pub rays: Vec<Ray>,
}

impl RayFunction {
    pub fn new(mode: AngularMode, theta_grid: Vec<f64>, rays: Vec<Ray>) -> Result<Self> {
        crate::geometry::check_angular_grid(mode, &theta_grid, 2)?;
        if rays.len() + 1 != theta_grid.len() {
            return Err(Error::Grid("one ray per angular cell is required".into()));
        }
        Ok(RayFunction { mode, theta_grid, rays })
    }

    /// ∫_{R^N_+} F(v) dx (Lebesgue measure).
    pub fn integral(&self, n: usize, f: impl Fn(f64) -> f64) -> Result<f64> {
        let m = HemisphereMeasure::new(self.mode, n, 0.0)?;
        let ang = angular_masses(&m, &self.theta_grid);
        Ok(self.rays.iter().zip(&ang).map(|(r, a)| a * r.integral(n, &f)).sum())
    }

    /// Lebesgue measure of {v > t}.
    pub fn distribution(&self, t: f64, n: usize) -> Result<f64> {
        let m = HemisphereMeasure::new(self.mode, n, 0.0)?;
        let ang = angular_masses(&m, &self.theta_grid);
        Ok(self.rays.iter().zip(&ang).map(|(r, a)| a * r.distribution(t, n)).sum())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RayFunction {
        let rays = self
            .rays
            .iter()
            .map(|r| Ray { z_grid: r.z_grid.clone(), values: r.values.iter().map(|v| f(*v)).collect() })
            .collect();
        RayFunction { mode: self.mode, theta_grid: self.theta_grid.clone(), rays }
    }
}

/// Starshaped rearrangement: along every ray, the non-increasing
/// rearrangement of z ↦ v(zθ) with respect to z^{N−1} dz, obtained by
/// rearranging in ζ = z^N.
pub fn starshaped_rearrange(v: &RayFunction, n: usize) -> Result<RayFunction> {
    v.mode.check_dimension(n)?;
    let d = n as f64;
    let rays = v
        .rays
        .iter()
        .map(|ray| {
            let cells = ray
                .z_grid
                .windows(2)
                .zip(&ray.values)
                .map(|(w, val)| (*val, (w[1].powf(d) - w[0].powf(d)) / d))
                .collect();
            let prof = rearrange_cells(cells, 1.0, d);
            Ray { z_grid: prof.r_grid, values: prof.values }
        })
        .collect();
    Ok(RayFunction { mode: v.mode, theta_grid: v.theta_grid.clone(), rays })
}

/// Result of [`decreasing_rearrange_1d`]: the rearranged function as a
/// piecewise-linear interpolant and the two sides of the Landes inequality
/// ∫ t^δ |f̂'| dt ≤ ∫ t^δ |f'| dt.
#[derive(Debug, Clone)]
pub struct Rearranged1d {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    pub landes_lhs: f64,
    pub landes_rhs: f64,
}

impl Rearranged1d {
    pub fn value_at(&self, s: f64) -> f64 {
        piecewise_linear(&self.nodes, &self.values, s)
    }
}

fn piecewise_linear(x: &[f64], y: &[f64], s: f64) -> f64 {
    if s < x[0] {
        return y[0];
    }
    let i = x.partition_point(|&v| v <= s);
    if i >= x.len() {
        return 0.0;
    }
    let (a, b) = (i - 1, i);
    if x[b] == x[a] {
        return y[b];
    }
    y[a] + (y[b] - y[a]) * (s - x[a]) / (x[b] - x[a])
}

fn weighted_variation(x: &[f64], y: &[f64], delta: f64) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .filter(|(w, _)| w[1] > w[0])
        .map(|(w, v)| {
            let slope = ((v[1] - v[0]) / (w[1] - w[0])).abs();
            slope * (w[1].powf(delta + 1.0) - w[0].powf(delta + 1.0)) / (delta + 1.0)
        })
        .sum()
}

/// Non-increasing rearrangement on (0, ∞) of the piecewise-linear
/// interpolant of (t_i, f_i). The interpolant's distribution function is
/// piecewise linear between the sample values, so f̂ is again piecewise
/// linear and both Landes integrals are exact.
pub fn decreasing_rearrange_1d(t: &[f64], f: &[f64], delta: f64) -> Result<Rearranged1d> {
    if t.len() != f.len() || t.len() < 2 {
        return Err(Error::Grid("need at least two samples and matching lengths".into()));
    }
    check_edges(t, "sample")?;
    if t[0] < 0.0 || !(delta >= 0.0) {
        return Err(domain("samples must lie in [0, inf) and delta >= 0"));
    }
    if f.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(domain("samples must be finite and non-negative"));
    }
    if f[f.len() - 1] != 0.0 {
        return Err(domain("the last sample must be 0 (compact support)"));
    }
    // |{f > c}| (strict) or |{f >= c}| for the piecewise-linear interpolant.
    let measure = |c: f64, strict: bool| -> f64 {
        let mut s = 0.0;
        for (w, v) in t.windows(2).zip(f.windows(2)) {
            let (a, b) = (v[0].min(v[1]), v[0].max(v[1]));
            let len = w[1] - w[0];
            let full = if strict { c < a } else { c <= a };
            let part = if strict { c < b } else { c <= b };
            if full {
                s += len;
            } else if part && b > a {
                s += len * (b - c) / (b - a);
            }
        }
        s
    };
    let mut levels: Vec<f64> = f.iter().copied().filter(|v| *v > 0.0).collect();
    levels.sort_by(|a, b| b.total_cmp(a));
    levels.dedup();
    let mut nodes: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let points = levels
        .iter()
        .flat_map(|&c| [(measure(c, true), c), (measure(c, false), c)])
        .chain(std::iter::once((measure(0.0, true), 0.0)));
    for (s, c) in points {
        if nodes.last().is_some_and(|&x| x == s) {
            continue;
        }
        nodes.push(s);
        values.push(c);
    }
    if nodes.is_empty() {
        nodes.push(0.0);
        values.push(0.0);
    }
    let landes_lhs = weighted_variation(&nodes, &values, delta);
    let landes_rhs = weighted_variation(t, f, delta);
    Ok(Rearranged1d { nodes, values, landes_lhs, landes_rhs })
}

fn same_grid(u: &GriddedFunction, v: &GriddedFunction) -> bool {
    u.mode == v.mode && u.r_grid == v.r_grid && u.theta_grid == v.theta_grid
}

/// (∫ u v dμ_{l,α}, ∫ u* v* dμ_{l,α}) for u, v on the same grid.
pub fn hardy_littlewood_check(u: &GriddedFunction, v: &GriddedFunction, p: &WeightParams) -> Result<(f64, f64)> {
    if !same_grid(u, v) {
        return Err(Error::Grid("u and v must share one grid".into()));
    }
    let w = u.cell_measures(p.l, p)?;
    let lhs = u.values.iter().zip(&v.values).zip(&w).map(|((a, b), w)| a * b * w).sum();
    let us = schwarz_symmetrize(u, p)?;
    let vs = schwarz_symmetrize(v, p)?;
    let mut edges: Vec<f64> = us.r_grid.iter().chain(&vs.r_grid).copied().collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let rhs = edges
        .windows(2)
        .map(|e| {
            let mid = 0.5 * (e[0] + e[1]);
            us.value_at(mid) * vs.value_at(mid) * (us.ball(e[1]) - us.ball(e[0]))
        })
        .sum();
    Ok((lhs, rhs))
}

/// Outcome of [`polya_szego_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyaSzego {
    /// ∫ |∇u|^p dμ_{m,α}.
    pub lhs: f64,
    /// ∫ |∇u*|^p dμ_{m,α}.
    pub rhs: f64,
    /// Discretisation allowance: rhs ≤ lhs + tolerance is the contract.
    pub tolerance: f64,
    /// m = pk + (1 − p)l.
    pub m: f64,
}

/// Constant in the O(h²) allowance of the Pólya–Szegő check.
pub const POLYA_SZEGO_TOL_FACTOR: f64 = 4.0;

/// Pólya–Szegő principle with the μ_{l,α}-symmetrization and gradient
/// measure μ_{m,α}, m = pk + (1 − p)l. Requires a proven region.
pub fn polya_szego_check(u: &GriddedFunction, pexp: f64, p: &WeightParams) -> Result<PolyaSzego> {
    if !(pexp >= 1.0) {
        return Err(domain("p >= 1 is required"));
    }
    let verdict = classify(p)?;
    if !matches!(verdict.label, Label::HalfBallOptimal(_)) {
        return Err(Error::Classification(format!(
            "(k, l, N, alpha) = ({}, {}, {}, {}) is {}, not a proven region",
            p.k,
            p.l,
            p.n,
            p.alpha,
            verdict.label.name()
        )));
    }
    let m = pexp * p.k + (1.0 - pexp) * p.l;
    let lhs = u.integrate_gradient(m, p, |_, g| g.powf(pexp))?;
    let star = schwarz_symmetrize(u, p)?;
    let rc = u.r_centres();
    let prof: Vec<f64> = rc.iter().map(|&r| star.interpolated(r)).collect();
    let d = slopes(&rc, &prof);
    let rad = radial_moments(&u.r_grid, m + p.dim() + p.alpha)?;
    let kap = kappa(p.n, p.alpha)?;
    let rhs = d.iter().zip(&rad).map(|(g, w)| g.abs().powf(pexp) * w * kap).sum();
    let h = u.mesh_size();
    Ok(PolyaSzego { lhs, rhs, tolerance: POLYA_SZEGO_TOL_FACTOR * h * h * lhs, m })
}

/// Both sides of the interpolation bound
/// F(c²) ≥ F(1)^A F(0)^{1−A}, c = (N+α−1)/(k+N+α−1), where
/// F(t) = ∫ z^{N+α−1} √(v_z² + t |∇_θ v|²/z²) h dz dΘ.
/// All rays must share one z grid.
pub fn interpolation_bound_check(v: &RayFunction, a: f64, p: &WeightParams) -> Result<(f64, f64)> {
    p.check_admissible()?;
    v.mode.check_dimension(p.n)?;
    if p.k < 0.0 {
        return Err(domain("k >= 0 is required"));
    }
    let c = (p.dim() + p.alpha - 1.0) / p.perimeter_degree();
    if !(0.0..=c * c).contains(&a) {
        return Err(domain("A must lie in [0, ((N+alpha-1)/(k+N+alpha-1))^2]"));
    }
    let z = &v.rays[0].z_grid;
    if v.rays.iter().any(|r| &r.z_grid != z) || v.rays.len() < 3 || z.len() < 4 {
        return Err(Error::Grid("rays must share one z grid with at least 3 cells and 3 rays".into()));
    }
    let zc = centres(z);
    let tc = centres(&v.theta_grid);
    let nz = zc.len();
    let rad = radial_moments(z, p.dim() + p.alpha)?;
    let ang = angular_masses(&p.measure(), &v.theta_grid);
    let vz: Vec<Vec<f64>> = v.rays.iter().map(|r| slopes(&zc, &r.values)).collect();
    let mut vt = vec![vec![0.0; nz]; v.rays.len()];
    for i in 0..nz {
        let col: Vec<f64> = v.rays.iter().map(|r| r.values[i]).collect();
        for (j, d) in slopes(&tc, &col).into_iter().enumerate() {
            vt[j][i] = d / zc[i];
        }
    }
    let f = |t: f64| -> f64 {
        let mut s = 0.0;
        for j in 0..v.rays.len() {
            for i in 0..nz {
                s += ang[j] * rad[i] * (vz[j][i].powi(2) + t * vt[j][i].powi(2)).sqrt();
            }
        }
        s
    };
    Ok((f(c * c), f(1.0).powf(a) * f(0.0).powf(1.0 - a)))
}

/// Both sides of the starshaped Hölder bound and its constant d1.
pub fn starshaped_holder_check(m: &StarSet, p: &WeightParams) -> Result<(f64, f64, f64)> {
    p.check_admissible()?;
    let na = p.dim() + p.alpha;
    if !(p.l * (na - 1.0) / na <= p.k) {
        return Err(domain("l(N+alpha-1)/(N+alpha) <= k is required"));
    }
    let (s, q) = (p.volume_degree(), p.perimeter_degree());
    let gamma = (p.l * (na - 1.0) - p.k * na) / q;
    let d1 = (q / s).powf(q / s) * (na / (na - 1.0)).powf((na - 1.0) * (p.l - p.k + 1.0) / s);
    let lhs = weighted_volume(m, gamma, p)?.powf(q / s);
    let rhs = d1
        * weighted_volume(m, 0.0, p)?.powf((na - 1.0) * (p.l - p.k + 1.0) / s)
        * weighted_volume(m, -1.0, p)?.powf((p.k * na - p.l * (na - 1.0)) / s);
    Ok((lhs, rhs, d1))
}
