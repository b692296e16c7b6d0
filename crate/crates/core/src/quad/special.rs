use crate::error::{domain, Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    let mut s = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (z + i as f64);
    }
    s
}

/// Gamma function for real arguments, with reflection below 1/2.
///
/// ```
/// let g = isoperim::quad::gamma_fn(0.5).unwrap();
/// assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-14);
/// ```
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("gamma argument must be finite"));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma_fn(1.0 - x)?));
    }
    if x == x.floor() && x <= 30.0 {
        let mut f = 1.0;
        let mut i = 2.0;
        while i < x {
            f *= i;
            i += 1.0;
        }
        return Ok(f);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z))
}

/// Natural log of |Γ(x)| for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("ln_gamma requires x > 0"));
    }
    if x < 0.5 {
        return Ok(gamma_fn(x)?.ln());
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// Euler beta function B(a, b) for a, b > 0.
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(domain("beta requires a > 0 and b > 0"));
    }
    if a + b < 150.0 {
        Ok(gamma_fn(a)? * gamma_fn(b)? / gamma_fn(a + b)?)
    } else {
        Ok((ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?).exp())
    }
}

/// Surface measure of the unit sphere S^{d} in R^{d+1}.
pub fn sphere_area(d: usize) -> f64 {
    let h = (d as f64 + 1.0) / 2.0;
    2.0 * PI.powf(h) / gamma_fn(h).expect("positive argument")
}

/// κ(N, α): the integral of cos^α θ₁ over the upper unit half-sphere.
///
/// ```
/// let k = isoperim::quad::kappa(3, 0.0).unwrap();
/// assert!((k - 2.0 * std::f64::consts::PI).abs() < 1e-13);
/// ```
pub fn kappa(n: usize, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(domain("N >= 2 is required"));
    }
    if !(alpha > -1.0) {
        return Err(domain("alpha > -1 is required"));
    }
    let h = (n as f64 - 1.0) / 2.0;
    Ok(beta_fn(h, (alpha + 1.0) / 2.0)? * PI.powf(h) / gamma_fn(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma_fn(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert_eq!(gamma_fn(5.0).unwrap(), 24.0);
        assert_relative_eq!(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-14);
        assert!(matches!(gamma_fn(0.0), Err(Error::Pole(_))));
        assert!(matches!(gamma_fn(-3.0), Err(Error::Pole(_))));
    }

    #[test]
    fn gamma_recurrence_on_range() {
        // Γ(x+1) = xΓ(x), and integer values are factorials.
        let mut x = 0.1;
        while x < 50.0 {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            x += 0.37;
        }
        let mut fact = 1.0f64;
        for n in 1..40 {
            fact *= n as f64;
            assert_relative_eq!(gamma_fn(n as f64 + 1.0).unwrap(), fact, max_relative = 1e-13);
        }
        assert_relative_eq!(gamma_fn(33.5).unwrap().ln(), ln_gamma(33.5).unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn beta_known_values() {
        assert_relative_eq!(beta_fn(0.5, 0.5).unwrap(), PI, max_relative = 1e-14);
        assert_relative_eq!(beta_fn(1.0, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(beta_fn(0.5, 1.0).unwrap(), 2.0, max_relative = 1e-14);
        assert!(beta_fn(0.0, 1.0).is_err());
        assert!(beta_fn(1.0, -2.0).is_err());
    }

    #[test]
    fn kappa_known_values() {
        assert_relative_eq!(kappa(2, 0.0).unwrap(), PI, max_relative = 1e-14);
        assert_relative_eq!(kappa(2, 1.0).unwrap(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(kappa(3, 0.0).unwrap(), 2.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(2), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(0), 2.0, max_relative = 1e-14);
    }
}
