//! Rectangles Ω_{a,b} = (0,1) × (a,b) in the half-plane with density y^α,
//! α ∈ (−1, 0), whose isoperimetric ratios tend to zero.
//!
//! All quantities are closed forms. Writing U = a^{α+1} and
//! V = b^{α+1} − a^{α+1}, the ratio splits into a term that only depends on V
//! and a term that vanishes as U grows.

use crate::error::{domain, Error, Result};

/// The rectangle (0,1) × (a, b).
///
/// `width = b − a` is kept separately because the useful rectangles are far
/// from the axis and extremely thin, so b − a is not recoverable from b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectSet {
    pub a: f64,
    pub b: f64,
    pub width: f64,
    pub alpha: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -1.0 && alpha < 0.0) {
        return Err(domain("alpha must lie in (-1, 0)"));
    }
    Ok(())
}

impl RectSet {
    /// Requires 0 < a ≤ b; a = b is the degenerate segment.
    pub fn new(a: f64, b: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(a > 0.0) || !(b >= a) || !b.is_finite() {
            return Err(domain("0 < a <= b is required"));
        }
        Ok(RectSet { a, b, width: b - a, alpha })
    }

    /// The rectangle with a^{α+1} = U and b^{α+1} = U + V.
    pub fn from_uv(u: f64, v: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(u > 0.0) || !(v >= 0.0) {
            return Err(domain("U > 0 and V >= 0 are required"));
        }
        let e = 1.0 / (alpha + 1.0);
        let a = u.powf(e);
        let width = a * ((v / u).ln_1p() * e).exp_m1();
        let b = a + width;
        if !a.is_finite() || !b.is_finite() || !width.is_finite() {
            return Err(Error::Overflow(format!("rectangle with U = {u:e}, V = {v:e} is not representable")));
        }
        Ok(RectSet { a, b, width, alpha })
    }

    pub fn u(&self) -> f64 {
        self.a.powf(self.alpha + 1.0)
    }

    /// b^{α+1} − a^{α+1}, without cancellation.
    pub fn v(&self) -> f64 {
        let s = self.alpha + 1.0;
        self.u() * ((self.width / self.a).ln_1p() * s).exp_m1()
    }
}

/// ∫_{Ω} y^α = (b^{α+1} − a^{α+1})/(α+1).
pub fn rect_area(r: &RectSet) -> f64 {
    r.v() / (r.alpha + 1.0)
}

/// Two vertical sides of weighted length V/(α+1) plus horizontal sides a^α and b^α.
pub fn rect_perimeter(r: &RectSet) -> f64 {
    2.0 * rect_area(r) + r.a.powf(r.alpha) + r.b.powf(r.alpha)
}

/// P / A^{(α+1)/(α+2)}; +∞ for the degenerate rectangle.
///
/// ```
/// use isoperim::counterex::{rect_ratio, RectSet};
/// let r = RectSet::new(1.0, 4.0, -0.5).unwrap();
/// assert!((rect_ratio(&r) - 5.5 / 2f64.cbrt()).abs() < 1e-12);
/// ```
pub fn rect_ratio(r: &RectSet) -> f64 {
    let area = rect_area(r);
    if area == 0.0 {
        return f64::INFINITY;
    }
    rect_perimeter(r) / area.powf((r.alpha + 1.0) / (r.alpha + 2.0))
}

/// The two terms of the ratio in the (U, V) variables:
/// 2(α+1)^{−1/(α+2)} V^{1/(α+2)} and
/// (U^{α/(α+1)} + (U+V)^{α/(α+1)}) (α+1)^{(α+1)/(α+2)} V^{−(α+1)/(α+2)}.
pub fn rect_ratio_terms(u: f64, v: f64, alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    if !(u > 0.0) || !(v > 0.0) {
        return Err(domain("U > 0 and V > 0 are required"));
    }
    let s = alpha + 1.0;
    let t = alpha + 2.0;
    let first = 2.0 * s.powf(-1.0 / t) * v.powf(1.0 / t);
    let g = alpha / s;
    let second = (u.powf(g) + (u + v).powf(g)) * s.powf(s / t) * v.powf(-s / t);
    Ok((first, second))
}

pub fn rect_ratio_uv(u: f64, v: f64, alpha: f64) -> Result<f64> {
    let (x, y) = rect_ratio_terms(u, v, alpha)?;
    Ok(x + y)
}

/// A rectangle with ratio below ε.
///
/// V is fixed so that the first term equals ε/4, then U is the smallest value
/// (to bisection accuracy) bringing the second term down to ε/4, so the ratio
/// is ε/2 up to rounding and strictly monotone in ε.
pub fn vanishing_sequence(alpha: f64, eps: f64) -> Result<RectSet> {
    check_alpha(alpha)?;
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(domain("eps must be positive"));
    }
    let s = alpha + 1.0;
    let t = alpha + 2.0;
    let target = eps / 4.0;
    let v = (target / 2.0).powf(t) * s;
    if !(v > 0.0) {
        return Err(Error::Overflow(format!("V underflows for eps = {eps:e}")));
    }
    let second = |u: f64| rect_ratio_terms(u, v, alpha).map(|x| x.1);
    // With U+V ≥ U the second term is at most 2U^{α/(α+1)}·c, which pins an
    // upper bracket in closed form.
    let c = s.powf(s / t) * v.powf(-s / t);
    let mut hi = (target / (2.0 * c)).powf(s / alpha);
    if !hi.is_finite() || hi.powf(1.0 / s).is_infinite() {
        return Err(Error::Overflow(format!("U exceeds the floating range for eps = {eps:e}")));
    }
    let mut lo = hi;
    while second(lo)? <= target {
        lo *= 0.5;
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        if second(mid)? <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RectSet::from_uv(hi, v, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn area_and_perimeter_examples() {
        let r = RectSet::new(1.0, 4.0, -0.5).unwrap();
        assert_relative_eq!(rect_area(&r), 2.0, max_relative = 1e-14);
        assert_relative_eq!(rect_perimeter(&r), 5.5, max_relative = 1e-14);
        let r = RectSet::new(1.0, 2.0, -1e-9).unwrap();
        assert!((rect_area(&r) - 1.0).abs() < 1e-6);
        assert!((rect_perimeter(&r) - 4.0).abs() < 1e-6);
        let d = RectSet::new(3.0, 3.0, -0.5).unwrap();
        assert_eq!(rect_area(&d), 0.0);
        assert_relative_eq!(rect_perimeter(&d), 2.0 * 3f64.powf(-0.5), max_relative = 1e-15);
        assert_eq!(rect_ratio(&d), f64::INFINITY);
        assert!(RectSet::new(2.0, 1.0, -0.5).is_err());
        assert!(RectSet::new(1.0, 2.0, 0.5).is_err());
    }

    #[test]
    fn ratio_examples() {
        let r = RectSet::new(250000.0, 500.0004f64.powi(2), -0.5).unwrap();
        let v = rect_ratio(&r);
        assert!(v < 0.1 && (v - 0.0603).abs() < 5e-4, "{v}");
        assert_relative_eq!(rect_ratio_uv(500.0, 4e-4, -0.5).unwrap(), v, max_relative = 1e-6);
        let exact = RectSet::from_uv(500.0, 4e-4, -0.5).unwrap();
        assert_relative_eq!(rect_ratio(&exact), rect_ratio_uv(500.0, 4e-4, -0.5).unwrap(), max_relative = 1e-10);
    }

    #[test]
    fn direct_and_uv_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let alpha = rng.gen_range(-0.95..-0.05);
            let a = 10f64.powf(rng.gen_range(-2.0..3.0));
            let b = a * (1.0 + 10f64.powf(rng.gen_range(-3.0..1.0)));
            let r = RectSet::new(a, b, alpha).unwrap();
            let u = a.powf(alpha + 1.0);
            let v = b.powf(alpha + 1.0) - u;
            assert_relative_eq!(rect_ratio(&r), rect_ratio_uv(u, v, alpha).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn monotonicity_in_v() {
        for alpha in [-0.9, -0.5, -0.1] {
            let mut prev = 0.0;
            for j in 0..10 {
                let v = 10f64.powi(2 + j);
                let r = rect_ratio_uv(1.0, v, alpha).unwrap();
                assert!(r > prev);
                prev = r;
            }
            let mut prev = f64::INFINITY;
            for j in 0..10 {
                let (first, _) = rect_ratio_terms(1.0, 10f64.powi(-j), alpha).unwrap();
                assert!(first < prev);
                prev = first;
            }
            assert!(prev < 1e-3);
        }
    }

    #[test]
    fn vanishing_sequence_contract() {
        for alpha in [-0.9, -0.5, -0.1] {
            for eps in [1.0, 0.3, 0.1, 0.03] {
                let r = vanishing_sequence(alpha, eps).unwrap();
                let q = rect_ratio(&r);
                assert!(q < eps, "alpha {alpha} eps {eps}: {q}");
                assert_relative_eq!(q, rect_ratio_uv(r.u(), r.v(), alpha).unwrap(), max_relative = 1e-10);
            }
            let ratios: Vec<f64> =
                (0..=6).map(|j| rect_ratio(&vanishing_sequence(alpha, 2f64.powi(-j)).unwrap())).collect();
            for (j, w) in ratios.windows(2).enumerate() {
                assert!(w[1] < w[0] && w[1] < 2f64.powi(-(j as i32) - 1));
            }
        }
        assert!(matches!(vanishing_sequence(-0.9, 1e-300), Err(Error::Overflow(_))));
        assert!(vanishing_sequence(0.2, 0.1).is_err());
    }
}
