//! The orthant O₊ = {x_i > 0} with monomial density x^a = x₁^{a₁}···x_N^{a_N}.
//!
//! The spherical patch S^{N−1} ∩ O₊ is parametrized by
//! x₁ = cos θ₁, x₂ = sin θ₁ cos θ₂, …, x_N = sin θ₁ ··· sin θ_{N−1}
//! with every θ_j ∈ (0, π/2). In these coordinates x^a dσ is a product of
//! factors cos^{p_j} θ_j sin^{q_j} θ_j, so each axis gets its own
//! Gauss–Jacobi rule.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::geometry::WeightParams;
use crate::quad::{sinc, GaussRule};
use crate::regions::{classify, Verdict};

/// Exponents a₁, …, a_N of the monomial weight.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialWeight {
    pub exponents: Vec<f64>,
}

impl MonomialWeight {
    /// Exponents must be finite and non-negative; zero is accepted as the
    /// limit of a vanishing exponent.
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(domain("the orthant needs N >= 2"));
        }
        if exponents.iter().any(|a| !(*a >= 0.0) || !a.is_finite()) {
            return Err(domain("monomial exponents must be finite and non-negative"));
        }
        Ok(MonomialWeight { exponents })
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// |a| = Σ a_i.
    pub fn total(&self) -> f64 {
        self.exponents.iter().sum()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(domain(format!("weight has {} exponents but N = {n}", self.dim())));
        }
        Ok(())
    }

    /// (cos exponent, sin exponent) of θ_j in x^a dσ, j = 0..N−1.
    fn axis_exponents(&self) -> Vec<(f64, f64)> {
        let n = self.dim();
        (0..n - 1)
            .map(|j| {
                let tail: f64 = self.exponents[j + 1..].iter().sum();
                (self.exponents[j], (n - 2 - j) as f64 + tail)
            })
            .collect()
    }
}

/// Nodes and weights on (0, π/2) for cos^p θ sin^q θ dθ.
fn axis_rule(nodes: usize, p: f64, q: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let rule = GaussRule::jacobi(nodes, p, q)?;
    let scale = (0.5 * FRAC_PI_2).powf(p + q);
    let mut x = Vec::with_capacity(nodes);
    let mut w = Vec::with_capacity(nodes);
    for (t, wt) in rule.nodes.iter().zip(&rule.weights) {
        let th = FRAC_PI_2 * 0.5 * (t + 1.0);
        x.push(th);
        w.push(0.5 * FRAC_PI_2 * scale * wt * sinc(th).powf(q) * sinc(FRAC_PI_2 - th).powf(p));
    }
    Ok((x, w))
}

fn kappa_with(a: &MonomialWeight, nodes: usize) -> Result<f64> {
    a.axis_exponents()
        .into_iter()
        .map(|(p, q)| axis_rule(nodes, p, q).map(|(_, w)| w.iter().sum::<f64>()))
        .product()
}

/// ∫_{S^{N−1} ∩ O₊} x^a dσ.
///
/// ```
/// use isoperim::orthant::{orthant_kappa, MonomialWeight};
/// let a = MonomialWeight::new(vec![1.0, 1.0]).unwrap();
/// assert!((orthant_kappa(2, &a).unwrap() - 0.5).abs() < 1e-14);
/// ```
pub fn orthant_kappa(n: usize, a: &MonomialWeight) -> Result<f64> {
    a.check_dim(n)?;
    let coarse = kappa_with(a, 64)?;
    let fine = kappa_with(a, 128)?;
    if (fine - coarse).abs() > 1e-12 * fine.abs() {
        return Err(Error::NonConvergence("orthant hemisphere quadrature".into()));
    }
    Ok(fine)
}

fn check_exponents(k: f64, l: f64, n: usize, a: &MonomialWeight) -> Result<(f64, f64)> {
    a.check_dim(n)?;
    if !k.is_finite() || !l.is_finite() {
        return Err(domain("k and l must be finite"));
    }
    let na = n as f64 + a.total();
    if !(l + na > 0.0) {
        return Err(domain("l+N+|a| must be positive"));
    }
    if !(k + na - 1.0 > 0.0) {
        return Err(domain("k+N+|a|-1 must be positive"));
    }
    Ok((l + na, k + na - 1.0))
}

/// D = (l+N+|a|)^{(k+N+|a|−1)/(l+N+|a|)} · κ_a^{(l−k+1)/(l+N+|a|)}.
pub fn orthant_constant(k: f64, l: f64, n: usize, a: &MonomialWeight) -> Result<f64> {
    let (vol, per) = check_exponents(k, l, n, a)?;
    let c = orthant_kappa(n, a)?;
    Ok(vol.powf(per / vol) * c.powf((l - k + 1.0) / vol))
}

/// Same decision procedure as [`classify`] with α replaced by |a|.
pub fn orthant_classify(k: f64, l: f64, n: usize, a: &MonomialWeight) -> Result<Verdict> {
    check_exponents(k, l, n, a)?;
    classify(&WeightParams::new(k, l, n, a.total())?)
}

type Radius = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// {r σ : 0 ≤ r < m(σ)} for σ on the orthant patch, with m a function of the
/// angles (θ₁, …, θ_{N−1}). Only N = 2 and N = 3 are supported.
#[derive(Clone)]
pub struct OrthantStarSet {
    pub n: usize,
    m: Radius,
    /// Gauss–Jacobi nodes per angular axis.
    pub nodes: usize,
}

impl std::fmt::Debug for OrthantStarSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrthantStarSet").field("n", &self.n).field("nodes", &self.nodes).finish()
    }
}

const FD_STEP: f64 = 1e-5;

impl OrthantStarSet {
    pub fn new(n: usize, m: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Result<Self> {
        if n != 2 && n != 3 {
            return Err(domain("orthant star sets are supported for N = 2 and N = 3"));
        }
        Ok(OrthantStarSet { n, m: Arc::new(m), nodes: 48 })
    }

    pub fn ball(n: usize, r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(domain("radius must be positive"));
        }
        Self::new(n, move |_| r)
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn radius(&self, angles: &[f64]) -> f64 {
        (self.m)(angles)
    }

    /// m and |∇_S m|² by central differences.
    fn radius_and_slope(&self, t: &[f64]) -> (f64, f64) {
        let m = (self.m)(t);
        let h = FD_STEP;
        let shifted = |i: usize, dh: f64| {
            let mut u = t.to_vec();
            u[i] += dh;
            (self.m)(&u)
        };
        let d0 = (shifted(0, h) - shifted(0, -h)) / (2.0 * h);
        if self.n == 2 {
            return (m, d0 * d0);
        }
        let d1 = (shifted(1, h) - shifted(1, -h)) / (2.0 * h);
        (m, d0 * d0 + (d1 / t[0].sin()).powi(2))
    }

    /// ∫ g(m, |∇m|²) x^a dσ over the patch.
    fn integrate(&self, a: &MonomialWeight, g: impl Fn(f64, f64) -> f64) -> Result<f64> {
        a.check_dim(self.n)?;
        let axes: Vec<(Vec<f64>, Vec<f64>)> =
            a.axis_exponents().into_iter().map(|(p, q)| axis_rule(self.nodes, p, q)).collect::<Result<_>>()?;
        let mut sum = 0.0;
        let mut eval = |t: &[f64], w: f64| -> Result<()> {
            let (m, s) = self.radius_and_slope(t);
            if !(m > 0.0) || !m.is_finite() {
                return Err(domain("the radial function must be positive"));
            }
            sum += w * g(m, s);
            Ok(())
        };
        if self.n == 2 {
            for (t, w) in axes[0].0.iter().zip(&axes[0].1) {
                eval(&[*t], *w)?;
            }
        } else {
            for (t0, w0) in axes[0].0.iter().zip(&axes[0].1) {
                for (t1, w1) in axes[1].0.iter().zip(&axes[1].1) {
                    eval(&[*t0, *t1], w0 * w1)?;
                }
            }
        }
        Ok(sum)
    }
}

/// ∫_Ω |x|^l x^a dx.
pub fn orthant_volume(m: &OrthantStarSet, l: f64, a: &MonomialWeight) -> Result<f64> {
    let d = l + m.n as f64 + a.total();
    if !(d > 0.0) {
        return Err(domain("l+N+|a| must be positive"));
    }
    m.integrate(a, |r, _| r.powf(d) / d)
}

/// ∫_{∂Ω ∩ O₊} |x|^k x^a dℋ_{N−1}.
pub fn orthant_perimeter(m: &OrthantStarSet, k: f64, a: &MonomialWeight) -> Result<f64> {
    let e = k + a.total() + m.n as f64 - 2.0;
    m.integrate(a, |r, s| r.powf(e) * (r * r + s).sqrt())
}

/// P / V^{(k+N+|a|−1)/(l+N+|a|)}.
pub fn orthant_rayleigh_ratio(m: &OrthantStarSet, k: f64, l: f64, a: &MonomialWeight) -> Result<f64> {
    let (vol, per) = check_exponents(k, l, m.n, a)?;
    Ok(orthant_perimeter(m, k, a)? / orthant_volume(m, l, a)?.powf(per / vol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gamma_fn;
    use crate::regions::{Case, Label};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn mw(a: &[f64]) -> MonomialWeight {
        MonomialWeight::new(a.to_vec()).unwrap()
    }

    fn kappa_oracle(a: &[f64]) -> f64 {
        let n = a.len() as f64;
        let tot: f64 = a.iter().sum();
        let num: f64 = a.iter().map(|x| gamma_fn((x + 1.0) / 2.0).unwrap()).product();
        num / (2f64.powf(n - 1.0) * gamma_fn((tot + n) / 2.0).unwrap())
    }

    #[test]
    fn kappa_examples() {
        assert_relative_eq!(orthant_kappa(2, &mw(&[1.0, 1.0])).unwrap(), 0.5, max_relative = 1e-14);
        assert!((orthant_kappa(2, &mw(&[1e-9, 1e-9])).unwrap() - PI / 2.0).abs() < 1e-6);
        for a in [&[1.0, 1.0, 1.0][..], &[0.5, 2.0, 0.3], &[0.2, 0.7, 1.1, 0.4]] {
            assert_relative_eq!(orthant_kappa(a.len(), &mw(a)).unwrap(), kappa_oracle(a), max_relative = 1e-12);
        }
        // Brute force: midpoint rule on the (θ, φ) square for a = (1, 1, 1).
        let n = 800;
        let h = FRAC_PI_2 / n as f64;
        let mut s = 0.0;
        for i in 0..n {
            let t = (i as f64 + 0.5) * h;
            for j in 0..n {
                let p = (j as f64 + 0.5) * h;
                let x = [t.cos(), t.sin() * p.cos(), t.sin() * p.sin()];
                s += x[0] * x[1] * x[2] * t.sin() * h * h;
            }
        }
        assert!((orthant_kappa(3, &mw(&[1.0, 1.0, 1.0])).unwrap() - s).abs() < 1e-6);
        assert!(orthant_kappa(3, &mw(&[1.0, 1.0])).is_err());
        assert!(MonomialWeight::new(vec![1.0, -0.5]).is_err());
    }

    #[test]
    fn constant_examples() {
        let d = orthant_constant(0.0, 0.0, 2, &mw(&[1.0, 1.0])).unwrap();
        assert_relative_eq!(d, 0.5 * 8f64.powf(0.75), max_relative = 1e-12);
        let d0 = orthant_constant(0.0, 0.0, 2, &mw(&[0.0, 0.0])).unwrap();
        assert_relative_eq!(d0, PI.sqrt(), max_relative = 1e-12);
        assert!(orthant_constant(0.0, -5.0, 2, &mw(&[1.0, 1.0])).is_err());
        for (k, l, a) in [(0.0, 0.0, vec![1.0, 1.0]), (0.5, 1.0, vec![0.3, 1.2]), (1.0, 0.5, vec![0.5, 0.5, 1.0])] {
            let a = mw(&a);
            let n = a.dim();
            let d = orthant_constant(k, l, n, &a).unwrap();
            for r in [1.0, 0.3, 2.5] {
                let ball = OrthantStarSet::ball(n, r).unwrap();
                assert_relative_eq!(orthant_rayleigh_ratio(&ball, k, l, &a).unwrap(), d, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let a = mw(&[1.0, 1.0]);
        assert_eq!(orthant_classify(2.0, 0.0, 2, &a).unwrap().label, Label::HalfBallOptimal(Case::I));
        assert_eq!(
            orthant_classify(0.0, 0.0, 2, &mw(&[0.5, 0.5])).unwrap().label,
            Label::HalfBallOptimal(Case::II)
        );
        let v = orthant_classify(1.0, 0.0, 2, &a).unwrap();
        assert_relative_eq!(v.thresholds.l1.unwrap(), 64.0 / 13.75 - 4.0, max_relative = 1e-14);
        // l+1 = k puts this point in case (i) as well; (i) takes precedence.
        assert_eq!(v.label, Label::HalfBallOptimal(Case::I));
        let v = orthant_classify(1.0, 0.5, 2, &a).unwrap();
        assert_eq!(v.label, Label::HalfBallOptimal(Case::III));
        for (k, l, al) in [(0.0, 1.0, 0.5), (0.5, 0.2, 1.0), (-0.3, 0.0, 2.0)] {
            let bridge = orthant_classify(k, l, 2, &mw(&[0.0, al])).unwrap();
            assert_eq!(bridge, classify(&WeightParams::new(k, l, 2, al).unwrap()).unwrap());
        }
    }

    #[test]
    fn perturbed_sets_beat_the_ball() {
        let a = mw(&[0.5, 1.0]);
        let d = orthant_constant(0.0, 0.0, 2, &a).unwrap();
        let m = OrthantStarSet::new(2, |t| 1.0 + 0.2 * (4.0 * t[0]).cos()).unwrap();
        assert!(orthant_rayleigh_ratio(&m, 0.0, 0.0, &a).unwrap() > d);
        let a = mw(&[1.0, 0.5, 0.5]);
        let d = orthant_constant(1.0, 0.5, 3, &a).unwrap();
        let m = OrthantStarSet::new(3, |t| 1.0 + 0.1 * t[0].cos() * (2.0 * t[1]).sin()).unwrap();
        assert!(orthant_rayleigh_ratio(&m, 1.0, 0.5, &a).unwrap() > d);
    }
}
