//! Adaptive Gauss–Legendre quadrature with vector-valued integrands.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_ORDER: usize = 20;
pub const DEFAULT_MAX_DEPTH: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    pub tol: f64,
    pub order: usize,
    /// Panels may be bisected at most this many times, so at most
    /// `2^max_depth` panels are accepted.
    pub max_depth: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, order: DEFAULT_ORDER, max_depth: DEFAULT_MAX_DEPTH }
    }
}

/// Nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn default_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(DEFAULT_ORDER))
}

fn panel(f: &impl Fn(f64) -> Vec<f64>, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>), dim: usize) -> Vec<f64> {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc = vec![0.0; dim];
    for (x, w) in rule.0.iter().zip(&rule.1) {
        let v = f(mid + half * x);
        for (s, vi) in acc.iter_mut().zip(&v) {
            *s += w * half * vi;
        }
    }
    acc
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Integrates a vector-valued `f` of fixed output length over `[a, b]`.
///
/// A panel is accepted when its estimate and the sum of its halves agree
/// to `tol * max(1, |I|) * width / (b - a)` in the sup norm.
pub fn integrate_vec(f: impl Fn(f64) -> Vec<f64>, a: f64, b: f64, opts: &QuadratureOptions) -> Result<Vec<f64>> {
    let owned;
    let rule = if opts.order == DEFAULT_ORDER {
        default_rule()
    } else {
        owned = gauss_legendre(opts.order);
        &owned
    };
    let dim = f(0.5 * (a + b)).len();
    let whole = panel(&f, a, b, rule, dim);
    let scale = sup(&whole).max(1.0);
    let mut total = vec![0.0; dim];
    let mut stack = vec![(a, b, whole, 0u32)];
    while let Some((lo, hi, coarse, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&f, lo, mid, rule, dim);
        let right = panel(&f, mid, hi, rule, dim);
        let fine: Vec<f64> = left.iter().zip(&right).map(|(l, r)| l + r).collect();
        let err = sup(&coarse.iter().zip(&fine).map(|(c, f)| c - f).collect::<Vec<_>>());
        if !err.is_finite() {
            return Err(Error::QuadratureDiverged);
        }
        if err <= opts.tol * scale * (hi - lo) / (b - a) {
            for (t, v) in total.iter_mut().zip(&fine) {
                *t += v;
            }
        } else if depth + 1 >= opts.max_depth {
            return Err(Error::QuadratureDiverged);
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    Ok(total)
}

/// Scalar convenience wrapper around [`integrate_vec`] on `[0, 1]`.
pub fn quadrature(f: impl Fn(f64) -> f64, opts: &QuadratureOptions) -> Result<f64> {
    integrate_vec(|t| vec![f(t)], 0.0, 1.0, opts).map(|v| v[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        let (x, w) = gauss_legendre(20);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for i in 0..20 {
            assert!((x[i] + x[19 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn single_panel_is_exact_through_degree_39() {
        let (x, w) = gauss_legendre(20);
        for k in 0..40 {
            let v: f64 = x.iter().zip(&w).map(|(x, w)| w * 0.5 * (0.5 + 0.5 * x).powi(k)).sum();
            assert!((v - 1.0 / (k + 1) as f64).abs() < 1e-13 / (k + 1) as f64 + 1e-15, "degree {k}");
        }
    }

    #[test]
    fn simple_integrals() {
        let o = QuadratureOptions::default();
        assert!((quadrature(|t| t * t, &o).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        assert!((quadrature(|t| 1.0 / ((t + 1.0) * (t + 1.0)), &o).unwrap() - 0.5).abs() < 1e-13);
        assert!((quadrature(|t| (1e-3 + t).sqrt(), &o).unwrap() - (2.0 / 3.0) * (1.001f64.powf(1.5) - 1e-3f64.powf(1.5))).abs() < 1e-9);
    }

    #[test]
    fn depth_cap_reports_divergence() {
        let o = QuadratureOptions { max_depth: 3, ..Default::default() };
        assert_eq!(quadrature(|t| (t - 0.3).abs().sqrt().recip(), &o), Err(Error::QuadratureDiverged));
    }
}
