use super::special::gamma_fn;
use crate::error::{domain, Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Exponents of the endpoint factors (x − lo)^left · (hi − x)^right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointWeight {
    pub left_exponent: f64,
    pub right_exponent: f64,
}

impl EndpointWeight {
    pub const NONE: EndpointWeight = EndpointWeight { left_exponent: 0.0, right_exponent: 0.0 };

    pub fn new(left_exponent: f64, right_exponent: f64) -> Self {
        EndpointWeight { left_exponent, right_exponent }
    }
}

/// Node count, target absolute tolerance and refinement budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub node_count: usize,
    pub target_abs_tol: f64,
    pub max_refinements: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { node_count: 64, target_abs_tol: 1e-10, max_refinements: 4 }
    }
}

/// Gauss rule on [−1, 1] for the weight (1 − t)^a (1 + t)^b.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

type RuleKey = (usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<RuleKey, Arc<GaussRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaussRule {
    /// Gauss–Legendre rule with `n` nodes.
    pub fn legendre(n: usize) -> Arc<GaussRule> {
        Self::jacobi(n, 0.0, 0.0).expect("Legendre weight is admissible")
    }

    /// Gauss–Jacobi rule via Golub–Welsch. Rules are cached by (n, a, b).
    pub fn jacobi(n: usize, a: f64, b: f64) -> Result<Arc<GaussRule>> {
        if n == 0 {
            return Err(domain("node count must be positive"));
        }
        if !(a > -1.0) || !(b > -1.0) {
            return Err(domain("endpoint exponents must exceed -1"));
        }
        let key = (n, a.to_bits(), b.to_bits());
        if let Some(rule) = cache().lock().unwrap().get(&key) {
            return Ok(rule.clone());
        }
        let rule = Arc::new(golub_welsch(n, a, b)?);
        cache().lock().unwrap().insert(key, rule.clone());
        Ok(rule)
    }

    /// ∫_lo^hi f(x) w(x) dx where w is the rule's weight mapped affinely to [lo, hi],
    /// i.e. ((hi − x)/(hi − lo)·2)^a ((x − lo)/(hi − lo)·2)^b.
    pub fn apply(&self, lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let c = 0.5 * (hi + lo);
        let h = 0.5 * (hi - lo);
        let mut s = 0.0;
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * t);
        }
        s * h
    }
}

fn golub_welsch(n: usize, a: f64, b: f64) -> Result<GaussRule> {
    let ab = a + b;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    diag[0] = (b - a) / (ab + 2.0);
    for (i, d) in diag.iter_mut().enumerate().skip(1) {
        let k = i as f64;
        *d = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    }
    for (i, e) in off.iter_mut().enumerate() {
        let k = (i + 1) as f64;
        let beta = if i == 0 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * k * (k + a) * (k + b) * (k + ab)
                / ((2.0 * k + ab).powi(2) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0))
        };
        *e = beta.sqrt();
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = off[i];
            m[(i + 1, i)] = off[i];
        }
    }
    let mu0 = 2f64.powf(ab + 1.0) * gamma_fn(a + 1.0)? * gamma_fn(b + 1.0)? / gamma_fn(ab + 2.0)?;
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| (eig.eigenvalues[j], mu0 * eig.eigenvectors[(0, j)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    if pairs.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(Error::NonConvergence("Golub-Welsch eigen solve".into()));
    }
    Ok(GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

/// ∫_lo^hi f(x) (x − lo)^left (hi − x)^right dx by Gauss–Jacobi quadrature,
/// doubling the node count until two successive estimates agree within
/// `spec.target_abs_tol`.
///
/// ```
/// use isoperim::quad::{integrate, EndpointWeight, QuadSpec};
/// let v = integrate(|_| 1.0, 0.0, 1.0, EndpointWeight::new(-0.5, 0.0), QuadSpec::default()).unwrap();
/// assert!((v - 2.0).abs() < 1e-12);
/// ```
pub fn integrate(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    w: EndpointWeight,
    spec: QuadSpec,
) -> Result<f64> {
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(domain("integration interval must be finite with lo < hi"));
    }
    if spec.node_count < 4 {
        return Err(domain("node_count >= 4 is required"));
    }
    let scale = (0.5 * (hi - lo)).powf(w.left_exponent + w.right_exponent);
    let eval = |n: usize| -> Result<f64> {
        let rule = GaussRule::jacobi(n, w.right_exponent, w.left_exponent)?;
        Ok(scale * rule.apply(lo, hi, &f))
    };
    let mut n = spec.node_count;
    let mut prev = eval(n)?;
    for _ in 0..spec.max_refinements {
        n *= 2;
        let next = eval(n)?;
        if (next - prev).abs() <= spec.target_abs_tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence(format!(
        "quadrature did not reach tolerance {:e} with {} nodes",
        spec.target_abs_tol, n
    )))
}
