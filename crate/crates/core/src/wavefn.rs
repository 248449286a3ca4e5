//! Exact radial wavefunctions.
//!
//! With `x = a^2 r^2` the upper component is
//!
//! ```text
//! G(r) = A exp(-x/2) x^{(l+1)/2} L_n^{l+1/2}(x)
//! ```
//!
//! and the lower component follows from the first radial equation,
//! `F = (G' + kappa G / r + (nu - lambda kappa) r G) / P` with
//! `P = ((E + m1)^2 - m2^2) / (2E)`. Reduced with Laguerre recurrences this is
//!
//! ```text
//! kappa > 0: F = C exp(-x/2) x^{l/2}     [(1+s)(n+l+1/2) L_n^{l-1/2} + (1-s)(n+1) L_{n+1}^{l-1/2}]
//! kappa < 0: F = C exp(-x/2) x^{(l+2)/2} [(1+s) L_n^{l+1/2} - 2 L_n^{l+3/2}]
//! ```
//!
//! with `C = 2 a E A / ((E + m1)^2 - m2^2)`.

use crate::error::{Error, Result};
use crate::qnum::ModelConfig;
use crate::quadrature;
use crate::spectrum::Level;

/// Relative convergence target for normalization integrals.
pub const QUADRATURE_REL_TOL: f64 = 1e-12;

/// Generalized Laguerre polynomial `L_n^alpha(x)` by upward recurrence
/// `(k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}`.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d^order/dx^order L_n^alpha(x) = (-1)^order L_{n-order}^{alpha+order}(x)`.
pub fn laguerre_derivative(n: u32, alpha: f64, x: f64, order: u32) -> f64 {
    if order > n {
        return 0.0;
    }
    let v = laguerre(n - order, alpha + f64::from(order), x);
    if order % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `scale * exp(-x/2) x^power * sum_i w_i L_{n_i}^{alpha_i}(x)` with `x = a^2 r^2`,
/// differentiable in `r` in closed form.
#[derive(Debug, Clone, PartialEq)]
struct LaguerreGaussian {
    a: f64,
    scale: f64,
    power: f64,
    terms: Vec<(f64, u32, f64)>,
}

impl LaguerreGaussian {
    fn poly(&self, x: f64, order: u32) -> f64 {
        self.terms
            .iter()
            .filter(|(w, _, _)| *w != 0.0)
            .map(|&(w, n, alpha)| w * laguerre_derivative(n, alpha, x, order))
            .sum()
    }

    fn envelope(&self, x: f64) -> f64 {
        self.scale * (-0.5 * x).exp() * x.powf(self.power)
    }

    fn value(&self, r: f64) -> f64 {
        let x = self.a * self.a * r * r;
        self.envelope(x) * self.poly(x, 0)
    }

    /// `d/dr = 2 a sqrt(x) d/dx`
    fn d_dr(&self, r: f64) -> f64 {
        let x = self.a * self.a * r * r;
        let g = self.power / x - 0.5;
        let ux = self.envelope(x) * (g * self.poly(x, 0) + self.poly(x, 1));
        2.0 * self.a * x.sqrt() * ux
    }

    /// `d^2/dr^2 = 2 a^2 d/dx + 4 a^2 x d^2/dx^2`
    fn d2_dr2(&self, r: f64) -> f64 {
        let a2 = self.a * self.a;
        let x = a2 * r * r;
        let g = self.power / x - 0.5;
        let dg = -self.power / (x * x);
        let (q, q1, q2) = (self.poly(x, 0), self.poly(x, 1), self.poly(x, 2));
        let env = self.envelope(x);
        let ux = env * (g * q + q1);
        let uxx = env * ((g * g + dg) * q + 2.0 * g * q1 + q2);
        2.0 * a2 * ux + 4.0 * a2 * x * uxx
    }
}

/// Closed-form `(G, F)` pair for one level, normalized to
/// `int_0^inf (G^2 + F^2) dr = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialWaveFunction {
    level: Level,
    m1: f64,
    m2: f64,
    norm: f64,
    g: LaguerreGaussian,
    f: LaguerreGaussian,
}

impl RadialWaveFunction {
    /// Builds the pair and fixes `A > 0` by quadrature.
    pub fn new(cfg: &ModelConfig, level: &Level) -> Result<Self> {
        let mut wf = Self::with_norm(cfg, level, 1.0)?;
        let norm = normalize_with_cutoff(&wf, truncation_radius(level))?;
        wf.set_norm(norm);
        Ok(wf)
    }

    /// Builds the pair with a caller-supplied `A`.
    pub fn with_norm(cfg: &ModelConfig, level: &Level, norm: f64) -> Result<Self> {
        let (m1, m2) = (cfg.m1, cfg.m2);
        let e = level.energy;
        let denom = (e + m1).powi(2) - m2 * m2;
        if denom == 0.0 || !denom.is_finite() {
            return Err(Error::SingularDenominator(denom));
        }
        let a = level.a_sq.sqrt();
        let l = f64::from(level.channel.l());
        let n = level.n;
        let nf = f64::from(n);
        let s = f64::from(level.s);

        let g = LaguerreGaussian {
            a,
            scale: norm,
            power: 0.5 * (l + 1.0),
            terms: vec![(1.0, n, l + 0.5)],
        };
        let f_scale = 2.0 * a * e * norm / denom;
        let f = if level.channel.kappa() > 0 {
            LaguerreGaussian {
                a,
                scale: f_scale,
                power: 0.5 * l,
                terms: vec![
                    ((1.0 + s) * (nf + l + 0.5), n, l - 0.5),
                    ((1.0 - s) * (nf + 1.0), n + 1, l - 0.5),
                ],
            }
        } else {
            LaguerreGaussian {
                a,
                scale: f_scale,
                power: 0.5 * (l + 2.0),
                terms: vec![(1.0 + s, n, l + 0.5), (-2.0, n, l + 1.5)],
            }
        };
        Ok(RadialWaveFunction {
            level: *level,
            m1,
            m2,
            norm,
            g,
            f,
        })
    }

    fn set_norm(&mut self, norm: f64) {
        let ratio = norm / self.norm;
        self.g.scale *= ratio;
        self.f.scale *= ratio;
        self.norm = norm;
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    /// Normalization constant `A`.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn g(&self, r: f64) -> f64 {
        self.g.value(r)
    }

    pub fn f(&self, r: f64) -> f64 {
        self.f.value(r)
    }

    pub fn dg(&self, r: f64) -> f64 {
        self.g.d_dr(r)
    }

    pub fn df(&self, r: f64) -> f64 {
        self.f.d_dr(r)
    }

    pub fn d2g(&self, r: f64) -> f64 {
        self.g.d2_dr2(r)
    }

    /// Coefficients `(P, M)` of the coupled first-order system, `P * M = calE`.
    pub fn coupling_coefficients(&self) -> (f64, f64) {
        let e = self.level.energy;
        let shift = 0.5 * e + (self.m1 * self.m1 - self.m2 * self.m2) / (2.0 * e);
        (shift + self.m1, shift - self.m1)
    }

    pub fn density(&self, r: f64) -> f64 {
        let (g, f) = (self.g(r), self.f(r));
        g * g + f * f
    }
}

/// Quadrature cutoff: oscillator turning point plus twelve Gaussian decay
/// lengths, `(sqrt(2 (4n + 2l + 3)) + 12) / a`.
pub fn truncation_radius(level: &Level) -> f64 {
    let x_turn = f64::from(4 * level.n + 2 * level.channel.l() + 3);
    ((2.0 * x_turn).sqrt() + 12.0) / level.a_sq.sqrt()
}

/// `G(r)` for `A = norm`.
pub fn radial_g(r: f64, level: &Level, norm: f64) -> f64 {
    let a2 = level.a_sq;
    let x = a2 * r * r;
    let l = f64::from(level.channel.l());
    norm * (-0.5 * x).exp() * x.powf(0.5 * (l + 1.0)) * laguerre(level.n, l + 0.5, x)
}

/// `F(r)` for `A = norm`.
pub fn radial_f(r: f64, level: &Level, norm: f64, cfg: &ModelConfig) -> Result<f64> {
    Ok(RadialWaveFunction::with_norm(cfg, level, norm)?.f(r))
}

/// The constant `A > 0` normalizing `int (G^2 + F^2) dr` to one.
pub fn normalize(level: &Level, cfg: &ModelConfig) -> Result<f64> {
    Ok(RadialWaveFunction::new(cfg, level)?.norm())
}

fn normalize_with_cutoff(wf: &RadialWaveFunction, r_max: f64) -> Result<f64> {
    let unit = wf.norm;
    let integral = quadrature::integrate(|r| wf.density(r), 0.0, r_max, QUADRATURE_REL_TOL)?;
    Ok(unit / integral.sqrt())
}

/// Normalization computed with an explicit cutoff radius.
pub fn normalize_to(level: &Level, cfg: &ModelConfig, r_max: f64) -> Result<f64> {
    let wf = RadialWaveFunction::with_norm(cfg, level, 1.0)?;
    normalize_with_cutoff(&wf, r_max)
}

/// `int (G_a G_b + F_a F_b) dr` over the larger of the two cutoffs; both
/// functions are assumed normalized, which sets the absolute tolerance.
pub fn overlap(a: &RadialWaveFunction, b: &RadialWaveFunction) -> Result<f64> {
    let r_max = truncation_radius(a.level()).max(truncation_radius(b.level()));
    quadrature::integrate_with_floor(
        |r| a.g(r) * b.g(r) + a.f(r) * b.f(r),
        0.0,
        r_max,
        QUADRATURE_REL_TOL,
        QUADRATURE_REL_TOL,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    Uniform(f64),
    Custom,
}

/// Sample points on the open half-line.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    r_values: Vec<f64>,
    spacing: Spacing,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 16;

    /// `r_i = i h` for `i = 1..=points`.
    pub fn uniform(h: f64, points: usize) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidGrid(format!("spacing must be positive, got {h}")));
        }
        if points < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} points, got {points}",
                Self::MIN_POINTS
            )));
        }
        Ok(RadialGrid {
            r_values: (1..=points).map(|i| i as f64 * h).collect(),
            spacing: Spacing::Uniform(h),
        })
    }

    /// `points` uniform interior points of `(0, r_max)`.
    pub fn uniform_to(r_max: f64, points: usize) -> Result<Self> {
        Self::uniform(r_max / (points + 1) as f64, points)
    }

    pub fn custom(r_values: Vec<f64>) -> Result<Self> {
        if r_values.len() < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} points, got {}",
                Self::MIN_POINTS,
                r_values.len()
            )));
        }
        if !(r_values[0] > 0.0) {
            return Err(Error::InvalidGrid("first point must be positive".into()));
        }
        if r_values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid("points must be strictly increasing".into()));
        }
        Ok(RadialGrid {
            r_values,
            spacing: Spacing::Custom,
        })
    }

    pub fn r_values(&self) -> &[f64] {
        &self.r_values
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.r_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r_values.is_empty()
    }
}

/// Normalized `G`, `F` sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub level: Level,
    pub grid: RadialGrid,
    pub g: Vec<f64>,
    pub f: Vec<f64>,
    pub norm: f64,
}

impl RadialSolution {
    pub fn sample(cfg: &ModelConfig, level: &Level, grid: RadialGrid) -> Result<Self> {
        let wf = RadialWaveFunction::new(cfg, level)?;
        Ok(Self::from_wavefunction(&wf, grid))
    }

    pub fn from_wavefunction(wf: &RadialWaveFunction, grid: RadialGrid) -> Self {
        let g = grid.r_values().iter().map(|&r| wf.g(r)).collect();
        let f = grid.r_values().iter().map(|&r| wf.f(r)).collect();
        RadialSolution {
            level: *wf.level(),
            grid,
            g,
            f,
            norm: wf.norm(),
        }
    }

    /// Interior sign changes of `G`.
    pub fn g_nodes(&self) -> usize {
        count_sign_changes(&self.g)
    }
}

/// Sign changes in a sampled function, ignoring exact zeros.
pub fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}

/// Sup-norms of the two first-order residuals over the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub g_eq: f64,
    pub f_eq: f64,
    /// `max_r max(|G|, |F|)`, the scale for relative comparisons.
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        self.g_eq.max(self.f_eq) / self.scale
    }
}

/// Residuals of
///
/// ```text
/// (d/dr + kappa/r + (nu - lambda kappa) r) G - P F = 0
/// (d/dr - kappa/r - (nu - lambda kappa) r) F + M G = 0
/// ```
///
/// using the sampled `G`, `F` and closed-form derivatives.
pub fn first_order_residual(solution: &RadialSolution, cfg: &ModelConfig) -> Result<Residual> {
    let wf = RadialWaveFunction::with_norm(cfg, &solution.level, solution.norm)?;
    let (p, m) = wf.coupling_coefficients();
    let kappa = solution.level.channel.kappa() as f64;
    let b = solution.level.tension().signed();
    let mut res = Residual {
        g_eq: 0.0,
        f_eq: 0.0,
        scale: 0.0,
    };
    for ((&r, &g), &f) in solution.grid.r_values().iter().zip(&solution.g).zip(&solution.f) {
        let rg = wf.dg(r) + (kappa / r + b * r) * g - p * f;
        let rf = wf.df(r) - (kappa / r + b * r) * f + m * g;
        res.g_eq = res.g_eq.max(rg.abs());
        res.f_eq = res.f_eq.max(rf.abs());
        res.scale = res.scale.max(g.abs()).max(f.abs());
    }
    Ok(res)
}

/// Relative sup-norm of `-G'' + V_eff G - calE G` with
/// `V_eff = kappa(kappa+1)/r^2 + b^2 r^2 + b(2 kappa - 1)`, normalized by
/// the sup of the individual terms.
pub fn second_order_residual(wf: &RadialWaveFunction, grid: &RadialGrid) -> f64 {
    let level = wf.level();
    let kappa = level.channel.kappa() as f64;
    let b = level.tension().signed();
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &r in grid.r_values() {
        let g = wf.g(r);
        let g2 = wf.d2g(r);
        let v = kappa * (kappa + 1.0) / (r * r) + b * b * r * r + b * (2.0 * kappa - 1.0);
        worst = worst.max((-g2 + v * g - level.cal_e * g).abs());
        scale = scale.max(g2.abs() + (v * g).abs() + (level.cal_e * g).abs());
    }
    worst / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::Channel;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    /// `sum_k (-1)^k C(n+alpha, n-k) x^k / k!`
    fn laguerre_series(n: u32, alpha: f64, x: f64) -> f64 {
        (0..=n)
            .map(|k| {
                let binom: f64 = (1..=n - k)
                    .map(|i| (alpha + f64::from(k) + f64::from(i)) / f64::from(i))
                    .product();
                let fact: f64 = (1..=k).map(f64::from).product();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom * x.powi(k as i32) / fact
            })
            .sum()
    }

    fn fig1() -> ModelConfig {
        ModelConfig::new(1.0, 2.0, 1.0, 0.1).unwrap()
    }

    fn level(cfg: &ModelConfig, n: u32, k: i64) -> Level {
        Level::new(cfg, n, Channel::new(k).unwrap()).unwrap()
    }

    fn grid_for(level: &Level, points: usize) -> RadialGrid {
        RadialGrid::uniform_to(truncation_radius(level), points).unwrap()
    }

    #[test]
    fn laguerre_low_orders() {
        for &alpha in &[-0.5, 0.0, 0.5, 2.5] {
            for &x in &[0.0, 0.3, 4.0] {
                assert_eq!(laguerre(0, alpha, x), 1.0);
                assert_relative_eq!(laguerre(1, alpha, x), 1.0 + alpha - x, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn laguerre_matches_series() {
        assert_relative_eq!(laguerre(3, 0.5, 2.0), laguerre_series(3, 0.5, 2.0), max_relative = 1e-13);
        for n in 0..10 {
            for &alpha in &[-0.5, 0.5, 1.5, 3.5] {
                for &x in &[0.01, 0.7, 3.0, 9.0] {
                    let s = laguerre_series(n, alpha, x);
                    let r = laguerre(n, alpha, x);
                    assert!((r - s).abs() <= 1e-11 * s.abs().max(1.0), "n={n} a={alpha} x={x}");
                }
            }
        }
    }

    #[test]
    fn laguerre_derivative_matches_finite_difference() {
        let h = 1e-5;
        for n in 1..6 {
            let x = 1.3;
            let fd = (laguerre(n, 0.5, x + h) - laguerre(n, 0.5, x - h)) / (2.0 * h);
            assert_relative_eq!(laguerre_derivative(n, 0.5, x, 1), fd, max_relative = 1e-8);
        }
        assert_eq!(laguerre_derivative(1, 0.5, 2.0, 2), 0.0);
    }

    #[test]
    fn g_vanishes_at_origin_and_ground_state_shape() {
        let cfg = fig1();
        let lv = level(&cfg, 0, -1);
        assert_eq!(radial_g(0.0, &lv, 1.0), 0.0);
        let a = lv.a_sq.sqrt();
        for &r in &[0.2, 0.9, 2.5] {
            let expect = 1.7 * a * r * (-0.5 * a * a * r * r).exp();
            assert_relative_eq!(radial_g(r, &lv, 1.7), expect, max_relative = 1e-14);
        }
    }

    #[test]
    fn ground_state_f_vanishes() {
        let cfg = fig1();
        for k in [-1, -2, -4] {
            let lv = level(&cfg, 0, k);
            for &r in &[0.0, 0.4, 1.0, 3.0] {
                assert_eq!(radial_f(r, &lv, 1.0, &cfg).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn f_vanishes_at_origin_for_negative_kappa() {
        let cfg = fig1();
        let lv = level(&cfg, 2, -2);
        assert_eq!(radial_f(0.0, &lv, 1.0, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn f_positive_kappa_satisfies_first_order_system() {
        let cfg = fig1();
        let lv = level(&cfg, 0, 1);
        let sol = RadialSolution::sample(&cfg, &lv, grid_for(&lv, 800)).unwrap();
        assert!(sol.f.iter().any(|v| v.abs() > 1e-3));
        let res = first_order_residual(&sol, &cfg).unwrap();
        assert!(res.relative() < 1e-8, "{res:?}");
    }

    #[test]
    fn f_matches_elimination_by_finite_difference() {
        // independent route: F = (G' + kappa G/r + b r G) / P with G' by central differences
        let cfg = ModelConfig::new(1.0, 2.0, -1.0, 0.1).unwrap();
        for (n, k) in [(0, 1), (1, -1), (2, 3), (1, -3)] {
            let lv = level(&cfg, n, k);
            let wf = RadialWaveFunction::new(&cfg, &lv).unwrap();
            let (p, _) = wf.coupling_coefficients();
            let b = lv.tension().signed();
            let h = 1e-5;
            for &r in &[0.3, 0.8, 1.6] {
                let dg = (wf.g(r + h) - wf.g(r - h)) / (2.0 * h);
                let f = (dg + (k as f64 / r + b * r) * wf.g(r)) / p;
                assert!((f - wf.f(r)).abs() < 1e-7, "n={n} k={k} r={r}");
            }
        }
    }

    #[test]
    fn ground_state_normalization_closed_form() {
        let cfg = fig1();
        let lv = level(&cfg, 0, -1);
        let a = lv.a_sq.sqrt();
        let expect = 2.0 * a.sqrt() * PI.powf(-0.25);
        assert_relative_eq!(normalize(&lv, &cfg).unwrap(), expect, max_relative = 1e-12);
    }

    #[test]
    fn normalization_insensitive_to_cutoff() {
        let cfg = fig1();
        for (n, k) in [(0, 1), (2, -3), (3, 2)] {
            let lv = level(&cfg, n, k);
            let r = truncation_radius(&lv);
            let a1 = normalize_to(&lv, &cfg, r).unwrap();
            let a2 = normalize_to(&lv, &cfg, 2.0 * r).unwrap();
            assert!((a1 - a2).abs() <= 1e-12 * a1, "n={n} k={k}");
        }
    }

    #[test]
    fn normalized_density_integrates_to_one() {
        let cfg = ModelConfig::new(1.0, 2.0, -1.0, 0.1).unwrap();
        for (n, k) in [(0, 1), (1, -2), (3, 3)] {
            let wf = RadialWaveFunction::new(&cfg, &level(&cfg, n, k)).unwrap();
            assert!(wf.norm() > 0.0);
            let v = quadrature::integrate(|r| wf.density(r), 0.0, truncation_radius(wf.level()), 1e-13).unwrap();
            assert!((v - 1.0).abs() < 1e-10, "{v}");
        }
    }

    #[test]
    fn node_count_equals_n() {
        let cfg = fig1();
        for n in 0..5 {
            for k in [-2, -1, 1, 3] {
                let lv = level(&cfg, n, k);
                let sol = RadialSolution::sample(&cfg, &lv, grid_for(&lv, 4000)).unwrap();
                assert_eq!(sol.g_nodes(), n as usize, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn perturbation_inflates_residual() {
        let cfg = fig1();
        let lv = level(&cfg, 1, 2);
        let sol = RadialSolution::sample(&cfg, &lv, grid_for(&lv, 500)).unwrap();
        let clean = first_order_residual(&sol, &cfg).unwrap();
        let mut bad = sol.clone();
        let half = bad.g.len() / 2;
        for g in &mut bad.g[..half] {
            *g *= 1.01;
        }
        let dirty = first_order_residual(&bad, &cfg).unwrap();
        assert!(dirty.relative() >= 1e3 * clean.relative().max(1e-14), "{clean:?} {dirty:?}");
    }

    #[test]
    fn threshold_level_residual_has_no_g_coupling() {
        // E = m1 + m2 makes M = 0, so the second equation is trivially 0 = 0
        let cfg = fig1();
        let lv = level(&cfg, 0, -1);
        let wf = RadialWaveFunction::new(&cfg, &lv).unwrap();
        let (_, m) = wf.coupling_coefficients();
        assert!(m.abs() < 1e-15);
        let sol = RadialSolution::from_wavefunction(&wf, grid_for(&lv, 200));
        let res = first_order_residual(&sol, &cfg).unwrap();
        assert_eq!(res.f_eq, 0.0);
        assert!(res.relative() < 1e-12);
    }

    #[test]
    fn coupling_product_is_cal_e() {
        let cfg = fig1();
        for (n, k) in [(0, 1), (2, -1), (1, 3)] {
            let lv = level(&cfg, n, k);
            let (p, m) = RadialWaveFunction::new(&cfg, &lv).unwrap().coupling_coefficients();
            assert_relative_eq!(p * m, lv.cal_e, max_relative = 1e-12);
        }
    }

    #[test]
    fn second_order_equation_holds() {
        for cfg in [fig1(), ModelConfig::new(1.0, 2.0, 0.0, 0.5).unwrap()] {
            for (n, k) in [(0, -1), (0, 1), (2, -2), (3, 3)] {
                let lv = level(&cfg, n, k);
                let wf = RadialWaveFunction::new(&cfg, &lv).unwrap();
                let res = second_order_residual(&wf, &grid_for(&lv, 600));
                assert!(res < 1e-8, "n={n} k={k} res={res}");
            }
        }
    }

    #[test]
    fn orthogonal_within_channel() {
        let cfg = ModelConfig::new(1.0, 2.0, -1.0, 0.1).unwrap();
        for k in [-2, 1] {
            let wfs: Vec<_> = (0..4)
                .map(|n| RadialWaveFunction::new(&cfg, &level(&cfg, n, k)).unwrap())
                .collect();
            for (i, a) in wfs.iter().enumerate() {
                for (j, b) in wfs.iter().enumerate() {
                    let o = overlap(a, b).unwrap();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((o - expect).abs() < 1e-8, "k={k} {i},{j}: {o}");
                }
            }
        }
    }

    #[test]
    fn coupling_rescaling_rescales_g() {
        let base = fig1();
        let c = 1.7;
        let scaled = ModelConfig::new(1.0, 2.0, c * c * base.lambda, c * c * base.nu).unwrap();
        for (n, k) in [(0, -1), (2, 2)] {
            let g0 = RadialWaveFunction::new(&base, &level(&base, n, k)).unwrap();
            let g1 = RadialWaveFunction::new(&scaled, &level(&scaled, n, k)).unwrap();
            let r_ref = 0.37;
            let ratio = g1.g(r_ref) / g0.g(c * r_ref);
            for &r in &[0.1, 0.5, 1.1, 2.0] {
                assert_relative_eq!(g1.g(r), ratio * g0.g(c * r), max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn grid_validation() {
        assert!(RadialGrid::uniform(0.0, 100).is_err());
        assert!(RadialGrid::uniform(0.1, 8).is_err());
        assert!(RadialGrid::custom(vec![0.0; 20]).is_err());
        let mut v: Vec<f64> = (1..=20).map(f64::from).collect();
        assert!(RadialGrid::custom(v.clone()).is_ok());
        v[5] = v[4];
        assert!(RadialGrid::custom(v).is_err());
        let g = RadialGrid::uniform(0.5, 16).unwrap();
        assert_eq!(g.r_values()[0], 0.5);
        assert_eq!(g.spacing(), Spacing::Uniform(0.5));
    }

    #[test]
    fn sign_changes() {
        assert_eq!(count_sign_changes(&[1.0, 0.0, -1.0, -2.0, 3.0]), 2);
        assert_eq!(count_sign_changes(&[0.0, 0.0]), 0);
    }
}
