//! Gradient functionals: Q, the weighted Hardy inequality and the
//! Caffarelli–Kohn–Nirenberg family restricted to radial functions.

use crate::error::{domain, Error, Result};
use crate::fd::Hermite;
use crate::geometry::WeightParams;
use crate::quad::halfline::{integrate_half_line, HalfLineSpec};
use crate::quad::{beta_fn, gamma_fn, kappa};
use crate::rearrange::GriddedFunction;
use crate::regions::{classify, Label};

/// A radial function v(|x|) on the half-space.
pub trait RadialFn: Sync {
    fn value(&self, r: f64) -> f64;
    fn derivative(&self, r: f64) -> f64;
    /// Radii where v is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    /// v vanishes beyond this radius.
    fn support(&self) -> Option<f64> {
        None
    }
}

/// A radial function given by closures.
pub struct RadialClosure<F, D> {
    pub f: F,
    pub df: D,
    pub breaks: Vec<f64>,
    pub support: Option<f64>,
}

impl<F, D> RadialClosure<F, D>
where
    F: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64 + Sync,
{
    pub fn new(f: F, df: D) -> Self {
        RadialClosure { f, df, breaks: Vec::new(), support: None }
    }

    pub fn with_support(mut self, r: f64) -> Self {
        self.support = Some(r);
        self
    }

    pub fn with_breaks(mut self, b: Vec<f64>) -> Self {
        self.breaks = b;
        self
    }
}

impl<F, D> RadialFn for RadialClosure<F, D>
where
    F: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64 + Sync,
{
    fn value(&self, r: f64) -> f64 {
        (self.f)(r)
    }
    fn derivative(&self, r: f64) -> f64 {
        (self.df)(r)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }
    fn support(&self) -> Option<f64> {
        self.support
    }
}

/// Cubic Hermite interpolant of samples (r_i, v_i), zero beyond the last node.
#[derive(Debug, Clone)]
pub struct SampledRadial {
    h: Hermite,
}

impl SampledRadial {
    /// Needs r_0 = 0, strictly increasing radii, at least 4 nodes and a final value of 0.
    pub fn new(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() < 4 || r.len() != v.len() {
            return Err(Error::Grid("need at least 4 samples with matching lengths".into()));
        }
        if r[0] != 0.0 || r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Grid("radii must start at 0 and increase strictly".into()));
        }
        if v[v.len() - 1] != 0.0 || v.iter().any(|x| !x.is_finite()) {
            return Err(domain("samples must be finite and end at 0"));
        }
        Ok(SampledRadial { h: Hermite::new(&r, &v) })
    }

    /// Samples `f` at `n + 1` equispaced radii on [0, rmax].
    pub fn sample(rmax: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let r: Vec<f64> = (0..=n).map(|i| rmax * i as f64 / n as f64).collect();
        let mut v: Vec<f64> = r.iter().map(|&x| f(x)).collect();
        if let Some(last) = v.last_mut() {
            *last = 0.0;
        }
        SampledRadial::new(r, v)
    }

    /// The same samples placed at radii r_i / t, i.e. v(t·).
    pub fn dilated(&self, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(domain("dilation factor must be positive"));
        }
        SampledRadial::new(self.h.x.iter().map(|x| x / t).collect(), self.h.f.clone())
    }

    fn last(&self) -> f64 {
        self.h.x[self.h.x.len() - 1]
    }
}

impl RadialFn for SampledRadial {
    fn value(&self, r: f64) -> f64 {
        if r >= self.last() {
            0.0
        } else {
            self.h.eval(r).0
        }
    }
    fn derivative(&self, r: f64) -> f64 {
        if r >= self.last() {
            0.0
        } else {
            self.h.eval(r).1
        }
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.h.x.clone()
    }
    fn support(&self) -> Option<f64> {
        Some(self.last())
    }
}

/// v(t·) for any radial function.
pub struct Dilated<'a> {
    pub inner: &'a dyn RadialFn,
    pub t: f64,
}

impl RadialFn for Dilated<'_> {
    fn value(&self, r: f64) -> f64 {
        self.inner.value(self.t * r)
    }
    fn derivative(&self, r: f64) -> f64 {
        self.t * self.inner.derivative(self.t * r)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints().into_iter().map(|b| b / self.t).collect()
    }
    fn support(&self) -> Option<f64> {
        self.inner.support().map(|s| s / self.t)
    }
}

fn radial_integral(g: &dyn Fn(f64) -> f64, v: &dyn RadialFn, spec: HalfLineSpec) -> Result<f64> {
    integrate_half_line(g, &v.breakpoints(), v.support(), spec)
}

fn check_q_params(p: &WeightParams) -> Result<f64> {
    p.check_admissible()?;
    if p.k > p.l + 1.0 {
        return Err(domain("k <= l+1 is required for the gradient functional"));
    }
    Ok(p.volume_degree() / p.perimeter_degree())
}

/// Q(u) = ∫|∇u| dμ_{k,α} / (∫ u^s dμ_{l,α})^{1/s}, s = (l+N+α)/(k+N+α−1),
/// on a gridded function.
pub fn q_functional(u: &GriddedFunction, p: &WeightParams) -> Result<f64> {
    let s = check_q_params(p)?;
    if !u.compact_support {
        return Err(domain("u must vanish on the outer ring of cells"));
    }
    if u.values.iter().all(|v| *v == 0.0) {
        return Err(domain("u must not vanish identically"));
    }
    let num = u.integrate_gradient(p.k, p, |_, g| g)?;
    let w = u.cell_measures(p.l, p)?;
    let den: f64 = u.values.iter().zip(&w).map(|(v, w)| v.powf(s) * w).sum();
    Ok(num / den.powf(1.0 / s))
}

/// Q on a radial function, with both integrals reduced to the half-line.
pub fn q_functional_radial(v: &dyn RadialFn, p: &WeightParams) -> Result<f64> {
    let s = check_q_params(p)?;
    let na = p.dim() + p.alpha;
    let c = kappa(p.n, p.alpha)?;
    let spec = HalfLineSpec::default();
    let num = radial_integral(&|r| r.powf(p.k + na - 1.0) * v.derivative(r).abs(), v, spec)?;
    let den = radial_integral(&|r| r.powf(p.l + na - 1.0) * v.value(r).abs().powf(s), v, spec)?;
    if !(den > 0.0) {
        return Err(domain("v must not vanish identically"));
    }
    Ok(c * num / (c * den).powf(1.0 / s))
}

fn hardy_gap(p: f64, k: f64, alpha: f64, n: usize) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() || !k.is_finite() || !(alpha > -1.0) || n < 2 {
        return Err(domain("need p >= 1, alpha > -1, N >= 2 and finite k"));
    }
    let c = n as f64 - p + k + alpha;
    if !(c > 0.0) {
        return Err(domain("N-p+k+alpha must be positive"));
    }
    Ok(c)
}

/// ((N−p+k+α)/p)^p, the sharp constant in
/// ∫|x|^k |∇u|^p x_N^α ≥ C ∫|x|^{k−p} |u|^p x_N^α.
///
/// ```
/// use isoperim::functional::hardy_constant;
/// assert!((hardy_constant(2.0, 0.0, 0.0, 3).unwrap() - 0.25).abs() < 1e-15);
/// ```
pub fn hardy_constant(p: f64, k: f64, alpha: f64, n: usize) -> Result<f64> {
    let c = hardy_gap(p, k, alpha, n)?;
    Ok((c / p).powf(p))
}

fn witness_exponent(eps: f64, p: f64, c: f64) -> Result<f64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(domain("eps must be positive"));
    }
    Ok((c + eps) / p)
}

/// Hardy quotient of u_ε = min(1, |x|^{−M}), M = (N−p+k+α+ε)/p, in closed form:
/// M^p / (1 + ε/(N−p+k+α)).
pub fn hardy_witness_ratio(eps: f64, p: f64, k: f64, alpha: f64, n: usize) -> Result<f64> {
    let c = hardy_gap(p, k, alpha, n)?;
    let m = witness_exponent(eps, p, c)?;
    Ok(m.powf(p) / (1.0 + eps / c))
}

/// The same quotient by radial quadrature of both integrals.
pub fn hardy_witness_quadrature(eps: f64, p: f64, k: f64, alpha: f64, n: usize) -> Result<f64> {
    let c = hardy_gap(p, k, alpha, n)?;
    let m = witness_exponent(eps, p, c)?;
    let d = n as f64 + alpha + k - 1.0;
    // Powers are merged so the far tail neither overflows nor underflows.
    let num = integrate_half_line(
        &|r: f64| if r < 1.0 { 0.0 } else { m.powf(p) * r.powf(d - p * (m + 1.0)) },
        &[1.0],
        None,
        HalfLineSpec::default(),
    )?;
    let den = integrate_half_line(
        &|r: f64| if r < 1.0 { r.powf(d - p) } else { r.powf(d - p - m * p) },
        &[1.0],
        None,
        HalfLineSpec::default(),
    )?;
    Ok(num / den)
}

/// Limit of the witness quotients as ε → 0, by Richardson extrapolation
/// on ε₀, ε₀/2, ε₀/4, ε₀/8.
pub fn hardy_witness_limit(p: f64, k: f64, alpha: f64, n: usize) -> Result<f64> {
    let eps0 = 1e-2;
    let mut t: Vec<f64> = (0..4)
        .map(|j| hardy_witness_ratio(eps0 / 2f64.powi(j), p, k, alpha, n))
        .collect::<Result<_>>()?;
    for order in 1..t.len() {
        let f = 2f64.powi(order as i32);
        for j in 0..t.len() - order {
            t[j] = (f * t[j + 1] - t[j]) / (f - 1.0);
        }
    }
    Ok(t[0])
}

/// Parameters of the inequality
/// (∫|x|^{bq}|v|^q x_N^α)^{p/q} ≤ C ∫|x|^{ap}|∇v|^p x_N^α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CknParams {
    pub a: f64,
    pub p: f64,
    pub q: f64,
    pub n: usize,
    pub alpha: f64,
    pub b: f64,
    /// +∞ when p ≥ N+α.
    pub p_star: f64,
}

const P_STAR_SLACK: f64 = 1e-12;

impl CknParams {
    pub fn new(a: f64, p: f64, q: f64, n: usize, alpha: f64) -> Result<Self> {
        if ![a, p, q, alpha].iter().all(|x| x.is_finite()) || n < 2 || !(alpha >= 0.0) {
            return Err(domain("need finite a, p, q, N >= 2 and alpha >= 0"));
        }
        if !(1.0 <= p && p <= q) {
            return Err(domain("1 <= p <= q is required"));
        }
        let (b, p_star) = ckn_exponents(a, p, q, n, alpha);
        if q > p_star * (1.0 + P_STAR_SLACK) {
            return Err(domain("q <= p* is required when p < N+alpha"));
        }
        let na = n as f64 + alpha;
        if !(a > 1.0 - na / p) {
            return Err(domain("a > 1-(N+alpha)/p is required"));
        }
        Ok(CknParams { a, p, q, n, alpha, b, p_star })
    }

    fn na(&self) -> f64 {
        self.n as f64 + self.alpha
    }
}

/// b = (N+α)(1/p − 1/q) + a − 1 and p* = (N+α)p/(N+α−p) (or +∞).
pub fn ckn_exponents(a: f64, p: f64, q: f64, n: usize, alpha: f64) -> (f64, f64) {
    let na = n as f64 + alpha;
    let b = na * (1.0 / p - 1.0 / q) + a - 1.0;
    let p_star = if p < na { na * p / (na - p) } else { f64::INFINITY };
    (b, p_star)
}

fn check_main_case(p: f64, q: f64, n: usize, alpha: f64) -> Result<()> {
    if n < 2 || !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(domain("need N >= 2 and alpha >= 0"));
    }
    if !(1.0 < p && p < q && q.is_finite()) {
        return Err(domain("1 < p < q < infinity is required"));
    }
    let (_, p_star) = ckn_exponents(0.0, p, q, n, alpha);
    if q > p_star * (1.0 + P_STAR_SLACK) {
        return Err(domain("q <= p* is required when p < N+alpha"));
    }
    Ok(())
}

/// The thresholds a1 ≤ a2 below which radial symmetry of CKN optimizers is
/// guaranteed through cases (ii) and (iii) of the isoperimetric classification.
///
/// ```
/// use isoperim::functional::ckn_thresholds;
/// let (a1, a2) = ckn_thresholds(2.0, 4.0, 2, 1.0).unwrap();
/// assert!((a1 - 1.0 / 6.0).abs() < 1e-14);
/// assert!((a2 - (4.0 / (3.0 * 3f64.sqrt()) - 0.5)).abs() < 1e-14);
/// ```
pub fn ckn_thresholds(p: f64, q: f64, n: usize, alpha: f64) -> Result<(f64, f64)> {
    check_main_case(p, q, n, alpha)?;
    let na = n as f64 + alpha;
    let d = q - q / p + 1.0;
    let tail = 1.0 - na / p;
    let a1 = (na - 1.0) / d + tail;
    let a2 = (na - 1.0) / (d * (na * (1.0 / p - 1.0 / q)).sqrt()) + tail;
    Ok((a1, a2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryRange {
    GuaranteedRadial,
    NotCovered,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryReport {
    pub range: SymmetryRange,
    pub a1: f64,
    pub a2: f64,
    /// The isoperimetric exponents attached to a.
    pub k: f64,
    pub l: f64,
    /// Classification of (k, l, N, α); meaningful inside the guaranteed range.
    pub mapped: Option<Label>,
}

/// The (k, l) with a = k + l(1/p − 1) and bq = l.
pub fn ckn_to_isoperimetric(c: &CknParams) -> (f64, f64) {
    let na = c.na();
    let s = c.a + na / c.p - 1.0;
    let l = c.q * s - na;
    let k = (1.0 + c.q - c.q / c.p) * s - na + 1.0;
    (k, l)
}

pub fn ckn_symmetry_range(c: &CknParams) -> Result<SymmetryReport> {
    let (a1, a2) = ckn_thresholds(c.p, c.q, c.n, c.alpha)?;
    let (k, l) = ckn_to_isoperimetric(c);
    let range = if c.a <= a2 { SymmetryRange::GuaranteedRadial } else { SymmetryRange::NotCovered };
    let mapped = WeightParams::new(k, l, c.n, c.alpha)
        .and_then(|w| classify(&w))
        .ok()
        .map(|v| v.label);
    Ok(SymmetryReport { range, a1, a2, k, l, mapped })
}

/// U(r) = (1 + r^s)^{p/(p−q)}, s = (N−p+ap+α)(q−p)/(p(p−1)).
#[derive(Debug, Clone, Copy)]
pub struct CknMinimizer {
    s: f64,
    c: f64,
}

impl CknMinimizer {
    pub fn new(c: &CknParams) -> Result<Self> {
        if !(c.p > 1.0) {
            return Err(domain("the minimizer family needs p > 1"));
        }
        if !(c.p < c.q) {
            return Err(domain("the minimizer family needs p < q"));
        }
        let s = (c.na() - c.p + c.a * c.p) * (c.q - c.p) / (c.p * (c.p - 1.0));
        Ok(CknMinimizer { s, c: c.p / (c.q - c.p) })
    }

    pub fn exponent(&self) -> f64 {
        self.s
    }
}

impl RadialFn for CknMinimizer {
    fn value(&self, r: f64) -> f64 {
        (1.0 + r.powf(self.s)).powf(-self.c)
    }
    fn derivative(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        let rs = r.powf(self.s);
        -self.c * self.s * rs / r * (1.0 + rs).powf(-self.c - 1.0)
    }
}

pub fn ckn_minimizer(r: f64, c: &CknParams) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(domain("r must be non-negative"));
    }
    Ok(CknMinimizer::new(c)?.value(r))
}

/// B((N−1)/2, (α+1)/2)^{1−p/q} π^{(N−1)(q−p)/(2q)} / Γ((N−1)/2)^{(q−p)/q}.
fn ckn_prefactor(c: &CknParams) -> Result<f64> {
    let h = (c.n as f64 - 1.0) / 2.0;
    let e = 1.0 - c.p / c.q;
    Ok(beta_fn(h, (c.alpha + 1.0) / 2.0)?.powf(e) * std::f64::consts::PI.powf(h * e) / gamma_fn(h)?.powf(e))
}

/// E(v) for radial v.
pub fn ckn_functional_radial(v: &dyn RadialFn, c: &CknParams) -> Result<f64> {
    ckn_functional_radial_with(v, c, HalfLineSpec::default())
}

pub fn ckn_functional_radial_with(v: &dyn RadialFn, c: &CknParams, spec: HalfLineSpec) -> Result<f64> {
    let na = c.na();
    let num = radial_integral(&|r| r.powf(c.a * c.p + na - 1.0) * v.derivative(r).abs().powf(c.p), v, spec)?;
    let den = radial_integral(&|r| r.powf(c.b * c.q + na - 1.0) * v.value(r).abs().powf(c.q), v, spec)?;
    if !(den > 0.0) {
        return Err(domain("v must not vanish identically"));
    }
    Ok(ckn_prefactor(c)? * num / den.powf(c.p / c.q))
}

/// The best radial constant: E(U) for p < q, the Hardy constant with
/// k = ap for p = q.
pub fn srad(c: &CknParams) -> Result<f64> {
    srad_with(c, HalfLineSpec::default())
}

pub fn srad_with(c: &CknParams, spec: HalfLineSpec) -> Result<f64> {
    if c.p == c.q {
        return hardy_constant(c.p, c.a * c.p, c.alpha, c.n);
    }
    let u = CknMinimizer::new(c)?;
    ckn_functional_radial_with(&u, c, spec)
}
