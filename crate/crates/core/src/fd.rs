//! Second-order finite differences on arbitrary increasing grids, and
//! cubic Hermite interpolation built on them.

/// Derivative estimates at every node: centered three-point formulas in the
/// interior, one-sided three-point formulas at both ends.
pub(crate) fn slopes(x: &[f64], f: &[f64]) -> Vec<f64> {
    let n = x.len();
    debug_assert!(n >= 3 && f.len() == n);
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        let h1 = x[i] - x[i - 1];
        let h2 = x[i + 1] - x[i];
        d[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1]
            + (h2 - h1) / (h1 * h2) * f[i]
            + h1 / (h2 * (h1 + h2)) * f[i + 1];
    }
    let (h1, h2) = (x[1] - x[0], x[2] - x[1]);
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1]
        - h1 / (h2 * (h1 + h2)) * f[2];
    let (h1, h2) = (x[n - 2] - x[n - 3], x[n - 1] - x[n - 2]);
    d[n - 1] = (2.0 * h2 + h1) / (h2 * (h1 + h2)) * f[n - 1] - (h1 + h2) / (h1 * h2) * f[n - 2]
        + h2 / (h1 * (h1 + h2)) * f[n - 3];
    d
}

/// Piecewise cubic Hermite interpolant through (x, f) with slopes from [`slopes`].
#[derive(Debug, Clone)]
pub(crate) struct Hermite {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub d: Vec<f64>,
}

impl Hermite {
    pub fn new(x: &[f64], f: &[f64]) -> Self {
        Hermite { x: x.to_vec(), f: f.to_vec(), d: slopes(x, f) }
    }

    /// Value and derivative on the piece [x_i, x_{i+1}].
    pub fn eval_in(&self, i: usize, t: f64) -> (f64, f64) {
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let (f0, f1, d0, d1) = (self.f[i], self.f[i + 1], self.d[i], self.d[i + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        let v = (2.0 * s3 - 3.0 * s2 + 1.0) * f0
            + (s3 - 2.0 * s2 + s) * h * d0
            + (-2.0 * s3 + 3.0 * s2) * f1
            + (s3 - s2) * h * d1;
        let dv = ((6.0 * s2 - 6.0 * s) * f0 + (-6.0 * s2 + 6.0 * s) * f1) / h
            + (3.0 * s2 - 4.0 * s + 1.0) * d0
            + (3.0 * s2 - 2.0 * s) * d1;
        (v, dv)
    }

    pub fn eval(&self, t: f64) -> (f64, f64) {
        let n = self.x.len();
        let i = match self.x.partition_point(|&v| v <= t) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        self.eval_in(i, t)
    }
}
