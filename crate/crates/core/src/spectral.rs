//! Second variation of the perimeter at the half-ball and the weighted
//! eigenvalue problems that decide its sign.
//!
//! Eigenvalue problems are discretised by cell-centred finite volumes: cell
//! masses are exact integrals of the weight, face conductances are harmonic
//! averages 1/∫(1/W). The resulting generalised problem A v = λ M v has a
//! diagonal M and a tridiagonal A, so it is reduced to a symmetric
//! tridiagonal matrix and solved by Sturm-sequence bisection followed by
//! inverse iteration.

use crate::error::{domain, Error, Result};
use crate::fd::Hermite;
use crate::geometry::{check_angular_grid, uniform_grid, AngularMode, WeightParams};
use crate::quad::{GaussRule, HemisphereMeasure};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Default number of cells for the eigenvalue problems.
pub const DEFAULT_GRID: usize = 2000;
/// Relative band |c − λ|/λ inside which the verdict is `Marginal`.
pub const MARGINAL_BAND: f64 = 1e-6;

type Func = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function on the upper half-sphere, either given in closed form (value
/// and derivative) or by samples on a grid covering the parameter interval.
#[derive(Clone)]
pub enum AngularFunction {
    Analytic { mode: AngularMode, f: Func, df: Func },
    Sampled { mode: AngularMode, grid: Vec<f64>, values: Vec<f64> },
}

impl std::fmt::Debug for AngularFunction {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AngularFunction::Analytic { mode, .. } => write!(fm, "Analytic({mode:?})"),
            AngularFunction::Sampled { mode, grid, .. } => write!(fm, "Sampled({mode:?}, {} nodes)", grid.len()),
        }
    }
}

impl AngularFunction {
    pub fn analytic(
        mode: AngularMode,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        AngularFunction::Analytic { mode, f: Arc::new(f), df: Arc::new(df) }
    }

    pub fn sampled(mode: AngularMode, grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_angular_grid(mode, &grid, 4)?;
        if grid.len() != values.len() {
            return Err(Error::Grid("grid and values differ in length".into()));
        }
        Ok(AngularFunction::Sampled { mode, grid, values })
    }

    /// Samples `f` on `nodes` equally spaced angles.
    pub fn sample(mode: AngularMode, nodes: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let (lo, hi) = mode.interval();
        let grid = uniform_grid(lo, hi, nodes.max(2));
        let values = grid.iter().map(|&t| f(t)).collect();
        AngularFunction::sampled(mode, grid, values)
    }

    pub fn mode(&self) -> AngularMode {
        match self {
            AngularFunction::Analytic { mode, .. } | AngularFunction::Sampled { mode, .. } => *mode,
        }
    }

    /// ∫ g(u, u') h dΘ.
    fn integrate(&self, m: &HemisphereMeasure, g: impl Fn(f64, f64) -> f64) -> Result<f64> {
        match self {
            AngularFunction::Analytic { f, df, .. } => m.integrate(|t| g(f(t), df(t))),
            AngularFunction::Sampled { grid, values, .. } => {
                let herm = Hermite::new(grid, values);
                Ok((0..grid.len() - 1)
                    .map(|i| {
                        m.integrate_piece(grid[i], grid[i + 1], 8, |t| {
                            let (v, dv) = herm.eval_in(i, t);
                            g(v, dv)
                        })
                    })
                    .sum())
            }
        }
    }
}

fn measure_for(u: &AngularFunction, p: &WeightParams) -> Result<HemisphereMeasure> {
    HemisphereMeasure::new(u.mode(), p.n, p.alpha)
}

/// Coefficients (s1, s2) of s(t) = s1 t + s2 t²/2 + o(t²) keeping the volume
/// of {r < 1 + t u + s(t)} fixed to second order.
pub fn volume_constraint_coeffs(u: &AngularFunction, p: &WeightParams) -> Result<(f64, f64)> {
    let m = measure_for(u, p)?;
    let total = m.total()?;
    let s1 = -u.integrate(&m, |v, _| v)? / total;
    let sq = u.integrate(&m, |v, _| (v + s1).powi(2))?;
    let s2 = -(p.l + p.dim() + p.alpha - 1.0) * sq / total;
    Ok((s1, s2))
}

/// J''(0) = (k+N+α−1)(k−l−1) ∫ (u+s1)² h dΘ + ∫ |∇u|² h dΘ.
///
/// ```
/// use isoperim::{geometry::{AngularMode, WeightParams}, spectral::*};
/// let u = AngularFunction::analytic(AngularMode::Planar, f64::sin, f64::cos);
/// let j = second_variation(&u, &WeightParams::new(0.0, 1.0, 2, 0.0).unwrap()).unwrap();
/// assert!((j + std::f64::consts::FRAC_PI_2).abs() < 1e-9);
/// ```
pub fn second_variation(u: &AngularFunction, p: &WeightParams) -> Result<f64> {
    p.check_admissible()?;
    let m = measure_for(u, p)?;
    let (s1, _) = volume_constraint_coeffs(u, p)?;
    let sq = u.integrate(&m, |v, _| (v + s1).powi(2))?;
    let grad = u.integrate(&m, |_, dv| dv * dv)?;
    Ok(p.perimeter_degree() * (p.k - p.l - 1.0) * sq + grad)
}

/// Smallest non-trivial eigenvalue of a discretised weighted problem.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub min_eigenvalue: f64,
    /// Cell centres of the discretisation.
    pub nodes: Vec<f64>,
    /// Eigenvector at the cell centres, normalised in the weighted L² norm.
    pub eigenvector: Vec<f64>,
    /// Euclidean residual of the symmetrised eigen-equation.
    pub residual: f64,
    /// 0 for axisymmetric eigenfunctions; 1 for g(θ₁)·Y(ω) with Y a
    /// first-order harmonic on S^{N−2}.
    pub azimuthal_degree: u32,
    /// Cell masses ∫ W over each cell.
    pub masses: Vec<f64>,
}

impl EigenResult {
    /// Weighted correlation of the eigenvector with `f`.
    pub fn correlation_with(&self, f: impl Fn(f64) -> f64) -> f64 {
        let (mut vg, mut vv, mut gg) = (0.0, 0.0, 0.0);
        for ((t, v), w) in self.nodes.iter().zip(&self.eigenvector).zip(&self.masses) {
            let g = f(*t);
            vg += w * v * g;
            vv += w * v * v;
            gg += w * g * g;
        }
        vg / (vv * gg).sqrt()
    }
}

/// Weighted Sturm–Liouville problem −(W v')' + Q v = λ W v on (lo, hi).
struct SturmLiouville {
    nodes: Vec<f64>,
    mass: Vec<f64>,
    conductance: Vec<f64>,
    potential: Vec<f64>,
}

impl SturmLiouville {
    /// `density` is W with its endpoint behaviour handled by `measure`;
    /// `potential_coeff(t)` multiplies the cell mass to give the potential.
    fn assemble(
        measure: &HemisphereMeasure,
        cells: usize,
        potential_coeff: Option<&dyn Fn(f64) -> f64>,
    ) -> Self {
        let (lo, hi) = measure.interval();
        let h = (hi - lo) / cells as f64;
        let nodes: Vec<f64> = (0..cells).map(|i| lo + (i as f64 + 0.5) * h).collect();
        let mass: Vec<f64> = (0..cells)
            .map(|i| measure.integrate_piece(lo + i as f64 * h, lo + (i + 1) as f64 * h, 8, |_| 1.0))
            .collect();
        let rule = GaussRule::legendre(16);
        let conductance = nodes
            .windows(2)
            .map(|w| 1.0 / rule.apply(w[0], w[1], |t| 1.0 / measure.density(t)))
            .collect();
        let potential = match potential_coeff {
            Some(q) => nodes.iter().zip(&mass).map(|(t, m)| q(*t) * m).collect(),
            None => vec![0.0; cells],
        };
        SturmLiouville { nodes, mass, conductance, potential }
    }

    /// The `index`-th smallest eigenpair (0-based).
    fn eigenpair(&self, index: usize, azimuthal_degree: u32) -> Result<EigenResult> {
        let n = self.nodes.len();
        let sq: Vec<f64> = self.mass.iter().map(|m| m.sqrt()).collect();
        let mut d = vec![0.0; n];
        let mut e = vec![0.0; n - 1];
        for i in 0..n {
            let mut a = self.potential[i];
            if i > 0 {
                a += self.conductance[i - 1];
            }
            if i + 1 < n {
                a += self.conductance[i];
            }
            d[i] = a / self.mass[i];
        }
        for i in 0..n - 1 {
            e[i] = -self.conductance[i] / (sq[i] * sq[i + 1]);
        }
        let lambda = bisect(&d, &e, index)?;
        let x = inverse_iteration(&d, &e, lambda);
        let mut residual = 0.0f64;
        for i in 0..n {
            let mut r = (d[i] - lambda) * x[i];
            if i > 0 {
                r += e[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                r += e[i] * x[i + 1];
            }
            residual += r * r;
        }
        let mut v: Vec<f64> = x.iter().zip(&sq).map(|(xi, s)| xi / s).collect();
        let norm = v.iter().zip(&self.mass).map(|(vi, m)| m * vi * vi).sum::<f64>().sqrt();
        let sign = if v.iter().zip(&self.nodes).map(|(vi, t)| vi * t.sin()).sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
        v.iter_mut().for_each(|vi| *vi *= sign / norm);
        Ok(EigenResult {
            min_eigenvalue: lambda,
            nodes: self.nodes.clone(),
            eigenvector: v,
            residual: residual.sqrt(),
            azimuthal_degree,
            masses: self.mass.clone(),
        })
    }
}

fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let prev = if q == 0.0 { f64::EPSILON * (e[i - 1].abs() + 1e-300) } else { q };
        q = d[i] - x - e[i - 1] * e[i - 1] / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn bisect(d: &[f64], e: &[f64], index: usize) -> Result<f64> {
    let n = d.len();
    if index >= n {
        return Err(domain("eigenvalue index exceeds matrix size"));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            return Ok(mid);
        }
        if sturm_count(d, e, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NonConvergence("Sturm bisection".into()))
}

/// Solves (T − σ) y = b for symmetric tridiagonal T with partial pivoting.
fn solve_shifted(d: &[f64], e: &[f64], sigma: f64, b: &[f64]) -> Vec<f64> {
    let n = d.len();
    // Row i stores coefficients for columns i, i+1, i+2 after elimination.
    let mut u0 = vec![0.0; n];
    let mut u1 = vec![0.0; n];
    let mut u2 = vec![0.0; n];
    let mut rhs = b.to_vec();
    let mut cur = [d[0] - sigma, if n > 1 { e[0] } else { 0.0 }, 0.0];
    let tiny = 1e-300;
    for i in 0..n {
        if i + 1 < n {
            let next = [e[i], d[i + 1] - sigma, if i + 2 < n { e[i + 1] } else { 0.0 }];
            if next[0].abs() > cur[0].abs() {
                // Swap rows i and i+1.
                let f = cur[0] / next[0];
                u0[i] = next[0];
                u1[i] = next[1];
                u2[i] = next[2];
                rhs.swap(i, i + 1);
                let r = rhs[i + 1] - f * rhs[i];
                rhs[i + 1] = r;
                cur = [cur[1] - f * next[1], cur[2] - f * next[2], 0.0];
            } else {
                let piv = if cur[0] == 0.0 { tiny } else { cur[0] };
                let f = next[0] / piv;
                u0[i] = piv;
                u1[i] = cur[1];
                u2[i] = cur[2];
                rhs[i + 1] -= f * rhs[i];
                cur = [next[1] - f * cur[1], next[2] - f * cur[2], 0.0];
            }
        } else {
            u0[i] = if cur[0] == 0.0 { tiny } else { cur[0] };
        }
    }
    let mut y = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s -= u1[i] * y[i + 1];
        }
        if i + 2 < n {
            s -= u2[i] * y[i + 2];
        }
        y[i] = s / u0[i];
    }
    y
}

fn inverse_iteration(d: &[f64], e: &[f64], lambda: f64) -> Vec<f64> {
    let n = d.len();
    let sigma = lambda + 1e-12 * lambda.abs().max(1e-3);
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i as f64 * 0.7).sin())).collect();
    for _ in 0..4 {
        let y = solve_shifted(d, e, sigma, &x);
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.iter().map(|v| v / norm).collect();
    }
    x
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 8 {
        return Err(domain("grid must have at least 8 cells"));
    }
    Ok(())
}

/// min ∫ v'² cos^α / ∫ v² cos^α over v on (−π/2, π/2) with ∫ v cos^α = 0.
/// The exact value is 1 + α with eigenfunction sin θ.
pub fn wirtinger_min_eig(alpha: f64, grid: usize) -> Result<EigenResult> {
    check_grid(grid)?;
    let m = HemisphereMeasure::new(AngularMode::Planar, 2, alpha)?;
    SturmLiouville::assemble(&m, grid, None).eigenpair(1, 0)
}

/// Smallest non-zero eigenvalue of the weighted Laplace–Beltrami operator on
/// the upper half-sphere with weight cos^α θ₁ (zero-mean functions). The
/// exact value is N + α − 1.
///
/// For N ≥ 3 the axisymmetric sector (degree 0 in the remaining angles) and
/// the first azimuthal sector g(θ₁)·Y(ω), with potential (N−2)/sin²θ₁, are
/// both solved and the smaller eigenvalue is returned.
pub fn poincare_min_eig(n: usize, alpha: f64, grid: usize) -> Result<EigenResult> {
    check_grid(grid)?;
    if n == 2 {
        return wirtinger_min_eig(alpha, grid);
    }
    let m = HemisphereMeasure::new(AngularMode::Axisymmetric, n, alpha)?;
    let axial = SturmLiouville::assemble(&m, grid, None).eigenpair(1, 0)?;
    let c = n as f64 - 2.0;
    let q = move |t: f64| c / t.sin().powi(2);
    let azimuthal = SturmLiouville::assemble(&m, grid, Some(&q)).eigenpair(0, 1)?;
    Ok(if azimuthal.min_eigenvalue <= axial.min_eigenvalue { azimuthal } else { axial })
}

/// Observed order log2((λ_n − λ_2n)/(λ_2n − λ_4n)) of a grid-dependent value.
pub fn observed_order(f: impl Fn(usize) -> Result<f64>, grid: usize) -> Result<f64> {
    let a = f(grid)?;
    let b = f(2 * grid)?;
    let c = f(4 * grid)?;
    Ok(((a - b) / (b - c)).abs().log2())
}

fn poincare_cache() -> &'static Mutex<HashMap<(usize, u64, usize), f64>> {
    static C: OnceLock<Mutex<HashMap<(usize, u64, usize), f64>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Poincaré constant Richardson-extrapolated from grids `grid` and `2·grid`.
pub fn poincare_extrapolated(n: usize, alpha: f64, grid: usize) -> Result<f64> {
    let key = (n, alpha.to_bits(), grid);
    if let Some(v) = poincare_cache().lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let a = poincare_min_eig(n, alpha, grid)?.min_eigenvalue;
    let b = poincare_min_eig(n, alpha, 2 * grid)?.min_eigenvalue;
    let v = (4.0 * b - a) / 3.0;
    poincare_cache().lock().unwrap().insert(key, v);
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Stable,
    Marginal,
    Unstable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub verdict: Stability,
    /// (k+N+α−1)(l+1−k).
    pub coefficient: f64,
    /// Computed Poincaré constant of the half-sphere.
    pub poincare: f64,
    /// (coefficient − poincare) / poincare.
    pub relative_gap: f64,
}

/// Sign of the second variation at the half-ball over zero-mean
/// perturbations: unstable iff (k+N+α−1)(l+1−k) exceeds the Poincaré constant.
pub fn stability_verdict(p: &WeightParams) -> Result<StabilityReport> {
    stability_verdict_with_grid(p, DEFAULT_GRID)
}

pub fn stability_verdict_with_grid(p: &WeightParams, grid: usize) -> Result<StabilityReport> {
    p.check_admissible()?;
    let poincare = poincare_extrapolated(p.n, p.alpha, grid)?;
    let coefficient = p.perimeter_degree() * (p.l + 1.0 - p.k);
    let relative_gap = (coefficient - poincare) / poincare;
    let verdict = if relative_gap.abs() <= MARGINAL_BAND {
        Stability::Marginal
    } else if relative_gap > 0.0 {
        Stability::Unstable
    } else {
        Stability::Stable
    };
    Ok(StabilityReport { verdict, coefficient, poincare, relative_gap })
}

/// Wirtinger eigenvalue minus 1 + α: the second variation of the half-disc
/// for N = 2, k = l = 0 is non-negative exactly when this is ≥ 0.
pub fn halfline_stability_margin(alpha: f64, grid: usize) -> Result<f64> {
    Ok(wirtinger_min_eig(alpha, grid)?.min_eigenvalue - (1.0 + alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn wp(k: f64, l: f64, n: usize, a: f64) -> WeightParams {
        WeightParams::new(k, l, n, a).unwrap()
    }

    fn sin_fn() -> AngularFunction {
        AngularFunction::analytic(AngularMode::Planar, f64::sin, f64::cos)
    }

    #[test]
    fn volume_constraint_example() {
        let (s1, s2) = volume_constraint_coeffs(&sin_fn(), &wp(0.0, 0.0, 2, 0.0)).unwrap();
        assert!(s1.abs() < 1e-14);
        assert_relative_eq!(s2, -0.5, max_relative = 1e-12);
    }

    #[test]
    fn second_variation_examples() {
        let u = sin_fn();
        let j = |k, l| second_variation(&u, &wp(k, l, 2, 0.0)).unwrap();
        assert!((j(0.0, 1.0) + PI / 2.0).abs() < 1e-9);
        assert!(j(0.0, 0.0).abs() < 1e-9);
        assert!((j(0.0, -0.5) - PI / 4.0).abs() < 1e-9);
        let s = AngularFunction::sample(AngularMode::Planar, 201, f64::sin).unwrap();
        assert!((second_variation(&s, &wp(0.0, 1.0, 2, 0.0)).unwrap() + PI / 2.0).abs() < 1e-4);
    }

    #[test]
    fn tridiagonal_solver_on_known_matrix() {
        // Discrete Dirichlet Laplacian: eigenvalues 2 − 2cos(jπ/(n+1)).
        let n = 50;
        let d = vec![2.0; n];
        let e = vec![-1.0; n - 1];
        for j in 0..5 {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((bisect(&d, &e, j).unwrap() - exact).abs() < 1e-13);
        }
        let lam = bisect(&d, &e, 2).unwrap();
        let x = inverse_iteration(&d, &e, lam);
        for (i, xi) in x.iter().enumerate() {
            let expect = (3.0 * (i + 1) as f64 * PI / (n + 1) as f64).sin();
            assert!((xi.abs() - (expect.abs() / (n as f64 / 2.0 + 0.5).sqrt())).abs() < 1e-8);
        }
    }

    #[test]
    fn wirtinger_examples() {
        for &a in &[0.0, -0.5, 1.0] {
            let r = wirtinger_min_eig(a, 1000).unwrap();
            assert!((r.min_eigenvalue - (1.0 + a)).abs() < 1e-3, "alpha {a}: {}", r.min_eigenvalue);
            assert!(r.correlation_with(f64::sin) >= 0.999);
            assert!(r.residual < 1e-8);
        }
    }

    #[test]
    fn poincare_examples() {
        for &(n, a) in &[(2, 0.0), (3, 0.0), (3, 1.0), (4, 0.5)] {
            let r = poincare_min_eig(n, a, 800).unwrap();
            let expect = n as f64 + a - 1.0;
            assert!((r.min_eigenvalue - expect).abs() < 1e-3, "N={n} a={a}: {}", r.min_eigenvalue);
        }
    }

    #[test]
    fn stability_examples() {
        assert_eq!(stability_verdict(&wp(0.0, 1.0, 2, 0.0)).unwrap().verdict, Stability::Unstable);
        assert_eq!(stability_verdict(&wp(0.0, 0.0, 2, 0.0)).unwrap().verdict, Stability::Marginal);
        assert_eq!(stability_verdict(&wp(2.0, 0.0, 3, 1.0)).unwrap().verdict, Stability::Stable);
    }
}
