//! Integrals over the upper unit half-sphere against h = cos^α θ₁.
//!
//! For N = 2 the half-circle is parametrised by θ ∈ [−π/2, π/2], the angle
//! from the x_N axis. For N ≥ 3 only functions of the polar angle
//! θ₁ ∈ [0, π/2] are integrated, with dΘ = |S^{N−2}| sin^{N−2}θ₁ dθ₁.

use super::gauss::{integrate, EndpointWeight, GaussRule, QuadSpec};
use super::special::sphere_area;
use crate::error::{domain, Result};
use std::f64::consts::FRAC_PI_2;

/// Angular parametrisation of a star set or an angular function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngularMode {
    /// N = 2, θ ∈ [−π/2, π/2].
    Planar,
    /// N ≥ 3, axisymmetric about the x_N axis, θ₁ ∈ [0, π/2].
    Axisymmetric,
}

impl AngularMode {
    pub fn for_dimension(n: usize) -> Result<Self> {
        match n {
            0 | 1 => Err(domain("N >= 2 is required")),
            2 => Ok(AngularMode::Planar),
            _ => Ok(AngularMode::Axisymmetric),
        }
    }

    pub fn interval(self) -> (f64, f64) {
        match self {
            AngularMode::Planar => (-FRAC_PI_2, FRAC_PI_2),
            AngularMode::Axisymmetric => (0.0, FRAC_PI_2),
        }
    }

    pub fn check_dimension(self, n: usize) -> Result<()> {
        if AngularMode::for_dimension(n)? != self {
            return Err(domain(format!("angular mode {self:?} does not match N = {n}")));
        }
        Ok(())
    }
}

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// The measure h dΘ on the half-sphere, factored as
/// (θ − lo)^L (hi − θ)^R · smooth(θ).
#[derive(Debug, Clone, Copy)]
pub struct HemisphereMeasure {
    pub mode: AngularMode,
    pub n: usize,
    pub alpha: f64,
    lo: f64,
    hi: f64,
    left: f64,
    right: f64,
    constant: f64,
}

impl HemisphereMeasure {
    pub fn new(mode: AngularMode, n: usize, alpha: f64) -> Result<Self> {
        mode.check_dimension(n)?;
        if !(alpha > -1.0) {
            return Err(domain("alpha > -1 is required"));
        }
        let (lo, hi) = mode.interval();
        let (left, right, constant) = match mode {
            AngularMode::Planar => (alpha, alpha, 1.0),
            AngularMode::Axisymmetric => (n as f64 - 2.0, alpha, sphere_area(n - 2)),
        };
        Ok(HemisphereMeasure { mode, n, alpha, lo, hi, left, right, constant })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Density of h dΘ with respect to dθ.
    pub fn density(&self, t: f64) -> f64 {
        match self.mode {
            AngularMode::Planar => t.cos().max(0.0).powf(self.alpha),
            AngularMode::Axisymmetric => {
                self.constant * t.sin().powf(self.left) * t.cos().max(0.0).powf(self.alpha)
            }
        }
    }

    /// The density divided by its endpoint power factors.
    fn smooth(&self, t: f64) -> f64 {
        match self.mode {
            AngularMode::Planar => {
                let base = if t >= 0.0 {
                    sinc(FRAC_PI_2 - t) / (t + FRAC_PI_2)
                } else {
                    sinc(t + FRAC_PI_2) / (FRAC_PI_2 - t)
                };
                base.powf(self.alpha)
            }
            AngularMode::Axisymmetric => {
                self.constant * sinc(t).powf(self.left) * sinc(FRAC_PI_2 - t).powf(self.alpha)
            }
        }
    }

    /// ∫_a^b f(θ) h dΘ with a fixed `nodes`-point Gauss rule, handling the
    /// endpoint singularities of the weight when [a, b] touches them.
    pub fn integrate_piece(&self, a: f64, b: f64, nodes: usize, f: impl Fn(f64) -> f64) -> f64 {
        let touch_lo = (a - self.lo).abs() < 1e-14;
        let touch_hi = (self.hi - b).abs() < 1e-14;
        let l = if touch_lo { self.left } else { 0.0 };
        let r = if touch_hi { self.right } else { 0.0 };
        if l == 0.0 && r == 0.0 {
            return GaussRule::legendre(nodes).apply(a, b, |t| f(t) * self.density(t));
        }
        let rule = GaussRule::jacobi(nodes, r, l).expect("exponents exceed -1");
        let scale = (0.5 * (b - a)).powf(l + r);
        scale
            * rule.apply(a, b, |t| {
                let mut g = f(t) * self.smooth(t);
                if !touch_lo {
                    g *= (t - self.lo).powf(self.left);
                }
                if !touch_hi {
                    g *= (self.hi - t).powf(self.right);
                }
                g
            })
    }

    /// ∫ f h dΘ over the pieces delimited by `breaks` (which must start at
    /// the lower and end at the upper endpoint).
    pub fn integrate_pieces(&self, breaks: &[f64], nodes: usize, f: impl Fn(f64) -> f64) -> f64 {
        breaks.windows(2).map(|w| self.integrate_piece(w[0], w[1], nodes, &f)).sum()
    }

    /// ∫ f h dΘ over the whole half-sphere for a smooth `f`, adaptively.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        let w = EndpointWeight::new(self.left, self.right);
        let spec = QuadSpec { target_abs_tol: 1e-13, max_refinements: 5, ..QuadSpec::default() };
        integrate(|t| f(t) * self.smooth(t), self.lo, self.hi, w, spec)
    }

    /// ∫ h dΘ, which equals κ(N, α).
    pub fn total(&self) -> Result<f64> {
        self.integrate(|_| 1.0)
    }
}
