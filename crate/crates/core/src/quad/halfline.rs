//! Integrals over (0, ∞) of functions with power-law behaviour at both ends.
//!
//! The half-line is cut into dyadic pieces [2^j, 2^{j+1}], each handled by a
//! fixed Gauss–Legendre rule. Summation walks away from r = 1 in both
//! directions; once successive pieces shrink geometrically the remainder is
//! added as a geometric tail.

use super::gauss::GaussRule;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineSpec {
    pub nodes_per_piece: usize,
    pub rel_tol: f64,
    pub max_pieces: usize,
}

impl Default for HalfLineSpec {
    fn default() -> Self {
        HalfLineSpec { nodes_per_piece: 20, rel_tol: 1e-15, max_pieces: 1200 }
    }
}

fn piece(f: &dyn Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], rule: &GaussRule) -> f64 {
    let mut s = 0.0;
    let mut lo = a;
    for &c in breaks.iter().filter(|&&c| c > a && c < b) {
        s += rule.apply(lo, c, f);
        lo = c;
    }
    s + rule.apply(lo, b, f)
}

/// Sums pieces produced by `next(j)` until the geometric remainder is negligible.
fn walk(next: impl Fn(usize) -> Option<f64>, spec: &HalfLineSpec, side: &str) -> Result<f64> {
    let mut sum = 0.0;
    let mut prev: Option<f64> = None;
    let mut prev_ratio: Option<f64> = None;
    let mut growing = 0usize;
    for j in 0..spec.max_pieces {
        let Some(v) = next(j) else { return Ok(sum) };
        if !v.is_finite() {
            return Err(Error::NonConvergence(format!("non-finite integrand towards {side}")));
        }
        sum += v;
        if let Some(p) = prev {
            if v == 0.0 && p == 0.0 && j > 4 {
                return Ok(sum);
            }
            if p != 0.0 {
                let rho = v / p;
                if rho.abs() >= 1.0 {
                    growing += 1;
                    if growing > 60 {
                        return Err(Error::NonConvergence(format!("integral diverges towards {side}")));
                    }
                } else if j >= 6 && rho > 0.0 {
                    let tail = v * rho / (1.0 - rho);
                    let drift = prev_ratio.map_or(1.0, |q: f64| (rho - q).abs());
                    let err = (drift * v.abs() / (1.0 - rho).powi(2)).max(1e-17 * tail.abs());
                    if err <= spec.rel_tol * sum.abs() && tail.abs() <= 1e-2 * sum.abs().max(1e-300) {
                        return Ok(sum + tail);
                    }
                    if v.abs() <= 1e-18 * sum.abs() {
                        return Ok(sum + tail);
                    }
                }
                prev_ratio = Some(rho);
            }
        }
        prev = Some(v);
    }
    Err(Error::NonConvergence(format!(
        "half-line quadrature did not settle towards {side} after {} pieces",
        spec.max_pieces
    )))
}

/// ∫_0^∞ f(r) dr (or ∫_0^support when `support` is given).
///
/// `breaks` lists interior points where f is not smooth.
///
/// ```
/// use isoperim::quad::halfline::{integrate_half_line, HalfLineSpec};
/// let v = integrate_half_line(&|r: f64| (1.0 + r).powi(-2), &[], None, HalfLineSpec::default()).unwrap();
/// assert!((v - 1.0).abs() < 1e-13);
/// ```
pub fn integrate_half_line(
    f: &dyn Fn(f64) -> f64,
    breaks: &[f64],
    support: Option<f64>,
    spec: HalfLineSpec,
) -> Result<f64> {
    if let Some(s) = support {
        if !(s > 0.0) {
            return Err(domain("support radius must be positive"));
        }
    }
    let rule = GaussRule::legendre(spec.nodes_per_piece);
    let top = support.unwrap_or(f64::INFINITY);
    let down = walk(
        |j| {
            let b = 2f64.powi(-(j as i32));
            let a = 0.5 * b;
            if a >= top {
                return Some(0.0);
            }
            Some(piece(f, a, b.min(top), breaks, &rule))
        },
        &spec,
        "zero",
    )?;
    let up = walk(
        |j| {
            let a = 2f64.powi(j as i32);
            if a >= top {
                return None;
            }
            let b = (2.0 * a).min(top);
            Some(piece(f, a, b, breaks, &rule))
        },
        &spec,
        "infinity",
    )?;
    Ok(down + up)
}
