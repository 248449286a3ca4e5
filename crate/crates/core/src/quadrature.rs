//! Composite Gauss-Legendre quadrature with panel doubling.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Nodes and weights of the `order`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let nf = order as f64;
        for i in 0..order.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(order, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(order, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integral over `[a, b]` split into `panels` equal subintervals.
    pub fn composite<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let half = 0.5 * h;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = a + (p as f64 + 0.5) * h;
            let s: f64 = self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * f(mid + half * x))
                .sum();
            total += half * s;
        }
        total
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrates `f` over `[a, b]`, doubling the panel count until two
/// successive estimates agree to `rel_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    integrate_with_floor(f, a, b, rel_tol, 0.0)
}

/// As [`integrate`], but also accepts a change below `abs_tol`; for integrals
/// that vanish, such as overlaps of orthogonal functions.
pub fn integrate_with_floor<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<f64> {
    const MAX_PANELS: usize = 1 << 14;
    let rule = GaussLegendre::new(20);
    let mut panels = 4;
    let mut prev = rule.composite(&f, a, b, panels);
    loop {
        panels *= 2;
        let cur = rule.composite(&f, a, b, panels);
        let change = (cur - prev).abs();
        if change <= (rel_tol * cur.abs()).max(abs_tol) || change == 0.0 {
            return Ok(cur);
        }
        if panels >= MAX_PANELS {
            return Err(Error::QuadratureNotConverged {
                rel_change: change / cur.abs(),
                panels,
            });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(5);
        // degree 9 is integrated exactly by 5 points
        let v = rule.composite(&|x: f64| x.powi(9) + x.powi(8), -1.0, 1.0, 1);
        assert_relative_eq!(v, 2.0 / 9.0, max_relative = 1e-14);
        let wsum: f64 = rule.weights().iter().sum();
        assert_relative_eq!(wsum, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn known_three_point_rule() {
        let rule = GaussLegendre::new(3);
        assert_relative_eq!(rule.nodes()[2], (0.6f64).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(rule.weights()[1], 8.0 / 9.0, max_relative = 1e-15);
        assert!(rule.nodes()[1].abs() < 1e-15);
    }

    #[test]
    fn gaussian_moment() {
        // int_0^inf r^2 exp(-r^2) dr = sqrt(pi)/4
        let v = integrate(|r| r * r * (-r * r).exp(), 0.0, 14.0, 1e-13).unwrap();
        assert_relative_eq!(v, PI.sqrt() / 4.0, max_relative = 1e-13);
    }

    #[test]
    fn non_convergence_is_reported() {
        let r = integrate(|x: f64| (1e6 * x).sin().signum(), 0.0, 1.0, 1e-15);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }
}
