//! Weighted volume and perimeter of star sets in the half-space, the
//! half-ball constant and the Horiuchi change of variables.
//!
//! A star set is { x = r ω : 0 ≤ r < m(ω), ω in the upper half-sphere }.
//! With e the radial exponent,
//!
//! * μ_{e,α}(M) = (e+N+α)^{-1} ∫ m^{e+N+α} h dΘ,
//! * P_{e,α}(M) = ∫ m^{e+N+α−2} √(m² + |∇m|²) h dΘ,
//!
//! where h = cos^α θ₁ and dΘ is the surface measure of S^{N−1}.

use crate::error::{domain, Error, Result};
use crate::fd::Hermite;
use crate::quad::{kappa, HemisphereMeasure};

pub use crate::quad::AngularMode;

/// Gauss nodes per grid interval used for every star-set integral.
const NODES_PER_PIECE: usize = 8;

/// Exponents k (perimeter), l (volume), α (x_N weight) and the dimension N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    pub k: f64,
    pub l: f64,
    pub alpha: f64,
    pub n: usize,
}

impl WeightParams {
    /// Checks N ≥ 2, α > −1 and finiteness. Admissibility of k and l is
    /// checked by the operations that need it.
    pub fn new(k: f64, l: f64, n: usize, alpha: f64) -> Result<Self> {
        if n < 2 {
            return Err(domain("N >= 2 is required"));
        }
        if !(alpha > -1.0) {
            return Err(domain("alpha > -1 is required"));
        }
        if !k.is_finite() || !l.is_finite() || !alpha.is_finite() {
            return Err(domain("k, l and alpha must be finite"));
        }
        Ok(WeightParams { k, l, alpha, n })
    }

    pub fn dim(&self) -> f64 {
        self.n as f64
    }

    /// l + N + α.
    pub fn volume_degree(&self) -> f64 {
        self.l + self.dim() + self.alpha
    }

    /// k + N + α − 1.
    pub fn perimeter_degree(&self) -> f64 {
        self.k + self.dim() + self.alpha - 1.0
    }

    /// The exponent (k+N+α−1)/(l+N+α) of the volume in the Rayleigh ratio.
    pub fn ratio_exponent(&self) -> f64 {
        self.perimeter_degree() / self.volume_degree()
    }

    pub fn check_admissible(&self) -> Result<()> {
        if !(self.volume_degree() > 0.0) {
            return Err(domain("l+N+alpha must be positive"));
        }
        if !(self.perimeter_degree() > 0.0) {
            return Err(domain("k+N+alpha-1 must be positive"));
        }
        Ok(())
    }

    pub fn mode(&self) -> AngularMode {
        AngularMode::for_dimension(self.n).expect("N >= 2 checked at construction")
    }

    pub(crate) fn measure(&self) -> HemisphereMeasure {
        HemisphereMeasure::new(self.mode(), self.n, self.alpha).expect("validated parameters")
    }
}

/// A star set given by samples of its radial function m on an angular grid
/// covering the whole parameter interval, endpoints included.
#[derive(Debug, Clone)]
pub struct StarSet {
    pub mode: AngularMode,
    pub theta_grid: Vec<f64>,
    pub m_values: Vec<f64>,
}

pub(crate) fn check_angular_grid(mode: AngularMode, grid: &[f64], min_len: usize) -> Result<()> {
    if grid.len() < min_len {
        return Err(Error::Grid(format!("at least {min_len} angular nodes are required")));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Grid("angular grid must be strictly increasing".into()));
    }
    let (lo, hi) = mode.interval();
    if (grid[0] - lo).abs() > 1e-12 || (grid[grid.len() - 1] - hi).abs() > 1e-12 {
        return Err(Error::Grid("angular grid must start and end at the interval endpoints".into()));
    }
    Ok(())
}

pub(crate) fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

impl StarSet {
    pub fn new(mode: AngularMode, theta_grid: Vec<f64>, m_values: Vec<f64>) -> Result<Self> {
        check_angular_grid(mode, &theta_grid, 16)?;
        if m_values.len() != theta_grid.len() {
            return Err(Error::Grid("m_values and theta_grid differ in length".into()));
        }
        if m_values.iter().any(|m| !(*m > 0.0) || !m.is_finite()) {
            return Err(domain("radial function must be positive and finite"));
        }
        let mut theta_grid = theta_grid;
        let (lo, hi) = mode.interval();
        let last = theta_grid.len() - 1;
        theta_grid[0] = lo;
        theta_grid[last] = hi;
        Ok(StarSet { mode, theta_grid, m_values })
    }

    /// Samples `m` on `nodes` equally spaced angles.
    pub fn from_fn(mode: AngularMode, nodes: usize, m: impl Fn(f64) -> f64) -> Result<Self> {
        let (lo, hi) = mode.interval();
        let grid = uniform_grid(lo, hi, nodes.max(2));
        let vals = grid.iter().map(|&t| m(t)).collect();
        StarSet::new(mode, grid, vals)
    }

    /// The half-ball of radius `r` centred at the origin.
    pub fn half_ball(mode: AngularMode, nodes: usize, r: f64) -> Result<Self> {
        StarSet::from_fn(mode, nodes, |_| r)
    }

    /// The dilation t·M.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(domain("dilation factor must be positive"));
        }
        StarSet::new(self.mode, self.theta_grid.clone(), self.m_values.iter().map(|m| m * t).collect())
    }

    /// ∫ F(m, |∇m|) h dΘ with m interpolated by cubic Hermite pieces.
    pub(crate) fn integrate(&self, measure: &HemisphereMeasure, f: impl Fn(f64, f64) -> f64) -> f64 {
        let herm = Hermite::new(&self.theta_grid, &self.m_values);
        (0..self.theta_grid.len() - 1)
            .map(|i| {
                let (a, b) = (self.theta_grid[i], self.theta_grid[i + 1]);
                measure.integrate_piece(a, b, NODES_PER_PIECE, |t| {
                    let (m, dm) = herm.eval_in(i, t);
                    f(m, dm.abs())
                })
            })
            .sum()
    }
}

fn check_mode(m: &StarSet, p: &WeightParams) -> Result<()> {
    m.mode.check_dimension(p.n)
}

/// μ_{e,α}(M). Uses N and α from `p`; the radial exponent is `e`.
pub fn weighted_volume(m: &StarSet, e: f64, p: &WeightParams) -> Result<f64> {
    check_mode(m, p)?;
    let s = e + p.dim() + p.alpha;
    if !(s > 0.0) {
        return Err(domain("e+N+alpha must be positive for a finite volume"));
    }
    Ok(m.integrate(&p.measure(), |r, _| r.powf(s)) / s)
}

/// P_{e,α}(M), the weighted perimeter of the part of ∂M inside the half-space.
pub fn weighted_perimeter(m: &StarSet, e: f64, p: &WeightParams) -> Result<f64> {
    check_mode(m, p)?;
    let s = e + p.dim() + p.alpha - 2.0;
    Ok(m.integrate(&p.measure(), |r, g| r.powf(s) * r.hypot(g)))
}

/// The half-ball constant
/// C_rad = (l+N+α)^{(k+N+α−1)/(l+N+α)} κ(N,α)^{(l−k+1)/(l+N+α)}.
///
/// ```
/// use isoperim::geometry::{crad, WeightParams};
/// let c = crad(&WeightParams::new(0.0, 0.0, 2, 0.0).unwrap()).unwrap();
/// assert!((c - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-13);
/// ```
pub fn crad(p: &WeightParams) -> Result<f64> {
    p.check_admissible()?;
    let s = p.volume_degree();
    let kap = kappa(p.n, p.alpha)?;
    Ok(s.powf(p.ratio_exponent()) * kap.powf((p.l - p.k + 1.0) / s))
}

/// P_{k,α}(M) / μ_{l,α}(M)^{(k+N+α−1)/(l+N+α)}.
pub fn rayleigh_ratio(m: &StarSet, p: &WeightParams) -> Result<f64> {
    p.check_admissible()?;
    let per = weighted_perimeter(m, p.k, p)?;
    let vol = weighted_volume(m, p.l, p)?;
    Ok(per / vol.powf(p.ratio_exponent()))
}

/// A ball of radius `radius` centred at `center_offset`·e₁, intersected
/// with the half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallSpec {
    pub center_offset: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Enclosure of the Rayleigh ratio of B_r(t e₁) ∩ R^N_+ from the bounds
/// t − r ≤ |x| ≤ t + r on the ball.
pub fn translated_ball_ratio(ball: BallSpec, p: &WeightParams) -> Result<Interval> {
    p.check_admissible()?;
    let (t, r) = (ball.center_offset, ball.radius);
    if !(r > 0.0) {
        return Err(domain("radius must be positive"));
    }
    if !(t > r + 1.0) {
        return Err(domain("center offset must exceed radius + 1"));
    }
    let kap = kappa(p.n, p.alpha)?;
    let na = p.dim() + p.alpha;
    let per = kap * r.powf(na - 1.0);
    let vol = kap * r.powf(na) / na;
    let (near, far) = (t - r, t + r);
    let bounds = |e: f64| {
        let (a, b) = (near.powf(e), far.powf(e));
        (a.min(b), a.max(b))
    };
    let (kmin, kmax) = bounds(p.k);
    let (lmin, lmax) = bounds(p.l);
    let q = p.ratio_exponent();
    Ok(Interval {
        lower: kmin * per / (lmax * vol).powf(q),
        upper: kmax * per / (lmin * vol).powf(q),
    })
}

/// y = x |x|^{k/(N+α−1)}, which carries μ_{k,α}-perimeter to
/// μ_{0,α}-perimeter up to the factor (N+α−1)/(k+N+α−1).
pub fn horiuchi_map(x: &[f64], k: f64, n: usize, alpha: f64) -> Result<Vec<f64>> {
    if x.len() != n {
        return Err(domain("point dimension must equal N"));
    }
    if !(x[n - 1] >= 0.0) {
        return Err(domain("x_N >= 0 is required"));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        if k < 0.0 {
            return Err(domain("x = 0 is singular for k < 0"));
        }
        return Ok(x.to_vec());
    }
    let f = norm.powf(k / (n as f64 + alpha - 1.0));
    Ok(x.iter().map(|v| v * f).collect())
}

/// l' = (l(N+α−1) − k(N+α)) / (k+N+α−1).
pub fn horiuchi_exponent(k: f64, l: f64, n: usize, alpha: f64) -> Result<f64> {
    let na = n as f64 + alpha;
    let d = k + na - 1.0;
    if !(d > 0.0) {
        return Err(domain("k+N+alpha-1 must be positive"));
    }
    Ok((l * (na - 1.0) - k * na) / d)
}

/// μ_{l,α}(M)^{1/(l+N+α)} / μ_{l',α}(M)^{1/(l'+N+α)} for l > l'.
pub fn measure_ratio(m: &StarSet, l: f64, l_prime: f64, p: &WeightParams) -> Result<f64> {
    if l == l_prime {
        return Err(domain("l and l' must differ"));
    }
    if !(l > l_prime) {
        return Err(domain("l must exceed l'"));
    }
    let na = p.dim() + p.alpha;
    let a = weighted_volume(m, l, p)?.powf(1.0 / (l + na));
    let b = weighted_volume(m, l_prime, p)?.powf(1.0 / (l_prime + na));
    Ok(a / b)
}

/// The value of [`measure_ratio`] on any half-ball centred at the origin.
pub fn half_ball_measure_ratio(l: f64, l_prime: f64, n: usize, alpha: f64) -> Result<f64> {
    let na = n as f64 + alpha;
    if !(l_prime + na > 0.0) {
        return Err(domain("l'+N+alpha must be positive"));
    }
    let kap = kappa(n, alpha)?;
    Ok((kap / (l + na)).powf(1.0 / (l + na)) / (kap / (l_prime + na)).powf(1.0 / (l_prime + na)))
}
