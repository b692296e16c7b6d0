//! Which (k, l, N, α) make the centred half-ball optimal.
//!
//! Three sufficient regions (i)–(iii), a necessary condition from the second
//! variation, and a positivity condition for the best constant. What lies
//! between the sufficient and necessary conditions is reported as
//! [`Label::Undetermined`].

use crate::error::{domain, Result};
use crate::geometry::WeightParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    I,
    II,
    III,
}

impl Case {
    pub fn roman(self) -> &'static str {
        match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    HalfBallOptimal(Case),
    SymmetryBreaking,
    ZeroConstant,
    Undetermined,
}

impl Label {
    pub fn name(self) -> String {
        match self {
            Label::HalfBallOptimal(c) => format!("HalfBallOptimal({})", c.roman()),
            Label::SymmetryBreaking => "SymmetryBreaking".into(),
            Label::ZeroConstant => "ZeroConstant".into(),
            Label::Undetermined => "Undetermined".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// l1(k, N, α), defined for k ≥ 0.
    pub l1: Option<f64>,
    pub l_break: f64,
    /// Largest l with l(N+α−1)/(N+α) ≤ k.
    pub l_positivity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub label: Label,
    pub constant_positive: bool,
    pub thresholds: Thresholds,
    /// The half-ball is the only optimal set (strict form of case ii or iii).
    pub unique_optimizer: bool,
    /// l sits exactly on the positivity boundary l(N+α−1)/(N+α) = k.
    pub on_positivity_boundary: bool,
}

/// l1(k, N, α) = (k+N+α−1)³ / ((k+N+α−1)² − (N+α−1)²/(N+α)) − N − α.
pub fn l1_threshold(k: f64, n: usize, alpha: f64) -> Result<f64> {
    let na = n as f64 + alpha;
    let d = k + na - 1.0;
    let den = d * d - (na - 1.0).powi(2) / na;
    if !(den > 0.0) {
        return Err(domain("l1 denominator (k+N+alpha-1)^2 - (N+alpha-1)^2/(N+alpha) must be positive"));
    }
    Ok(d.powi(3) / den - na)
}

/// l_break = k + (N+α−1)/(k+N+α−1) − 1, the largest l at which the
/// half-ball has non-negative second variation.
pub fn breaking_threshold(k: f64, n: usize, alpha: f64) -> Result<f64> {
    let na = n as f64 + alpha;
    let d = k + na - 1.0;
    if !(d > 0.0) {
        return Err(domain("k+N+alpha-1 must be positive"));
    }
    Ok(k + (na - 1.0) / d - 1.0)
}

/// l(N+α−1)/(N+α) ≤ k, which is equivalent to a positive best constant.
pub fn positivity(p: &WeightParams) -> Result<bool> {
    p.check_admissible()?;
    let na = p.dim() + p.alpha;
    Ok(p.l * (na - 1.0) / na <= p.k)
}

/// Labels a parameter quadruple.
///
/// The sufficient cases (i), (ii), (iii) are tried first, in that order; none
/// of them can hold when the constant vanishes. Otherwise l > l_break gives
/// [`Label::SymmetryBreaking`] whatever the sign of the constant (the flag
/// `constant_positive` still records it), a failed positivity condition gives
/// [`Label::ZeroConstant`], and the rest is [`Label::Undetermined`].
///
/// ```
/// use isoperim::{geometry::WeightParams, regions::{classify, Label}};
/// let v = classify(&WeightParams::new(0.0, 1.0, 2, 0.0).unwrap()).unwrap();
/// assert_eq!(v.label, Label::SymmetryBreaking);
/// ```
pub fn classify(p: &WeightParams) -> Result<Verdict> {
    p.check_admissible()?;
    if p.alpha < 0.0 {
        return Err(domain("alpha >= 0 is required for classification"));
    }
    let (k, l) = (p.k, p.l);
    let na = p.dim() + p.alpha;
    let l_break = breaking_threshold(k, p.n, p.alpha)?;
    let l1 = if k >= 0.0 { Some(l1_threshold(k, p.n, p.alpha)?) } else { None };
    let l_positivity = k * na / (na - 1.0);
    let positive = positivity(p)?;
    let pos_lhs = l * (na - 1.0) / na;
    let thresholds = Thresholds { l1, l_break, l_positivity };
    let mut unique = false;
    let label = if positive && l + 1.0 <= k {
        Label::HalfBallOptimal(Case::I)
    } else if positive && k <= 0.0 && k <= l + 1.0 {
        unique = pos_lhs < k;
        Label::HalfBallOptimal(Case::II)
    } else if positive && k >= 0.0 && k <= l + 1.0 && l1.is_some_and(|t| l <= t) {
        unique = l1.is_some_and(|t| l < t);
        Label::HalfBallOptimal(Case::III)
    } else if l > l_break {
        Label::SymmetryBreaking
    } else if !positive {
        Label::ZeroConstant
    } else {
        Label::Undetermined
    };
    Ok(Verdict {
        label,
        constant_positive: positive,
        thresholds,
        unique_optimizer: unique,
        on_positivity_boundary: pos_lhs == k,
    })
}
