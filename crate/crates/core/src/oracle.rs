//! Finite-difference cross-check of the closed-form spectrum.
//!
//! The second-order radial equation
//! `-G'' + [kappa(kappa+1)/r^2 + b^2 r^2 + b(2 kappa - 1)] G = calE G`,
//! `b = nu - lambda*kappa`, is discretized with the three-point stencil on a
//! uniform grid `r_i = i h` (Dirichlet at `r = 0` and `r = r_max`). The lowest
//! eigenvalues of the resulting symmetric tridiagonal matrix are located by
//! Sturm-sequence counting and bisection, on grids `h` and `h/2`, and
//! Richardson-extrapolated.

use crate::error::{Error, Result};
use crate::qnum::{Channel, ModelConfig};
use crate::spectrum::{effective_tension, Level};
use crate::wavefn::{RadialGrid, Spacing};

pub const DEFAULT_GRID_POINTS: usize = 4000;

/// Agreement threshold of `verify_level`, relative to `max(calE, a^2)`.
pub const VERIFY_REL_TOL: f64 = 1e-6;

const BISECTION_REL_TOL: f64 = 1e-13;
const BISECTION_MAX_ITER: usize = 200;

/// Symmetric tridiagonal matrix of `-d^2/dr^2 + V_eff(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedOperator {
    channel: Channel,
    /// `nu - lambda*kappa`
    tension: f64,
    grid: RadialGrid,
    h: f64,
    potential: Vec<f64>,
    diagonal: Vec<f64>,
    off_diagonal: f64,
}

/// `kappa(kappa+1)/r^2 + b^2 r^2 + b(2 kappa - 1)`
pub fn effective_potential(kappa: i64, tension: f64, r: f64) -> f64 {
    let k = kappa as f64;
    k * (k + 1.0) / (r * r) + tension * tension * r * r + tension * (2.0 * k - 1.0)
}

pub fn discretize(cfg: &ModelConfig, channel: Channel, grid: RadialGrid) -> Result<DiscretizedOperator> {
    let tension = effective_tension(cfg, channel)?.signed();
    DiscretizedOperator::build(channel, tension, grid)
}

impl DiscretizedOperator {
    fn build(channel: Channel, tension: f64, grid: RadialGrid) -> Result<Self> {
        let h = match grid.spacing() {
            Spacing::Uniform(h) => h,
            Spacing::Custom => {
                return Err(Error::InvalidGrid("finite differences need a uniform grid".into()))
            }
        };
        let potential: Vec<f64> = grid
            .r_values()
            .iter()
            .map(|&r| effective_potential(channel.kappa(), tension, r))
            .collect();
        let inv_h2 = 1.0 / (h * h);
        let diagonal = potential.iter().map(|v| v + 2.0 * inv_h2).collect();
        Ok(DiscretizedOperator {
            channel,
            tension,
            grid,
            h,
            potential,
            diagonal,
            off_diagonal: -inv_h2,
        })
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Dirichlet end point, one step past the last grid point.
    pub fn r_max(&self) -> f64 {
        self.h * (self.grid.len() + 1) as f64
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> f64 {
        self.off_diagonal
    }

    /// Entry `(i, k)` of the matrix.
    pub fn entry(&self, i: usize, k: usize) -> f64 {
        if i == k {
            self.diagonal[i]
        } else if i.abs_diff(k) == 1 {
            self.off_diagonal
        } else {
            0.0
        }
    }

    /// Same channel and cutoff, half the spacing.
    pub fn refined(&self) -> Result<Self> {
        let grid = RadialGrid::uniform(0.5 * self.h, 2 * self.grid.len() + 1)?;
        Self::build(self.channel, self.tension, grid)
    }

    /// Number of eigenvalues strictly below `x` (negative LDL^T pivots).
    pub fn sturm_count(&self, x: f64) -> usize {
        let e2 = self.off_diagonal * self.off_diagonal;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diagonal.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - e2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let e = self.off_diagonal.abs();
        let n = self.diagonal.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (i, &d) in self.diagonal.iter().enumerate() {
            let radius = e * (f64::from(u8::from(i > 0)) + f64::from(u8::from(i + 1 < n)));
            lo = lo.min(d - radius);
            hi = hi.max(d + radius);
        }
        (lo, hi)
    }

    /// The `k` smallest eigenvalues, ascending, by bisection.
    pub fn smallest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        if k == 0 || k > self.dim() {
            return Err(Error::InvalidArgument(format!(
                "requested {k} eigenvalues of a {}-dimensional operator",
                self.dim()
            )));
        }
        let (g_lo, g_hi) = self.gershgorin();
        let mut out: Vec<f64> = Vec::with_capacity(k);
        for index in 0..k {
            // eigenvalue `index` is the smallest x with count(x) > index
            let mut lo = out.last().copied().unwrap_or(g_lo);
            if self.sturm_count(lo) > index {
                lo = g_lo;
            }
            let mut hi = g_hi;
            let mut converged = false;
            for _ in 0..BISECTION_MAX_ITER {
                let mid = 0.5 * (lo + hi);
                let scale = lo.abs().max(hi.abs()).max(1.0);
                if hi - lo <= BISECTION_REL_TOL * scale || mid <= lo || mid >= hi {
                    converged = true;
                    break;
                }
                if self.sturm_count(mid) > index {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if !converged {
                return Err(Error::BisectionFailed { index, lo, hi });
            }
            out.push(0.5 * (lo + hi));
        }
        Ok(out)
    }

    /// Eigenvector for `eigenvalue` by inverse iteration, scaled so that
    /// `h * sum v_i^2 = 1` and the largest-magnitude entry is positive.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.dim();
        let shift = eigenvalue + 1e-9 * eigenvalue.abs().max(1.0);
        let mut v = vec![1.0; n];
        for _ in 0..4 {
            v = self.solve_shifted(shift, &v);
            let norm = (self.h * v.iter().map(|x| x * x).sum::<f64>()).sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        let peak = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if peak < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }

    /// Thomas algorithm for `(T - shift I) y = rhs`.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let e = self.off_diagonal;
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut denom = self.diagonal[0] - shift;
        c[0] = e / denom;
        d[0] = rhs[0] / denom;
        for i in 1..n {
            denom = self.diagonal[i] - shift - e * c[i - 1];
            if denom == 0.0 {
                denom = f64::EPSILON;
            }
            c[i] = e / denom;
            d[i] = (rhs[i] - e * d[i - 1]) / denom;
        }
        let mut y = vec![0.0; n];
        y[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = d[i] - c[i] * y[i + 1];
        }
        y
    }
}

/// Numerical eigenvalues of one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub channel: Channel,
    /// Richardson-extrapolated estimates, ascending.
    pub eigenvalues: Vec<f64>,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    /// `(h, r_max)` of the coarse grid.
    pub grid_params: (f64, f64),
    /// `|fine - coarse| / 3`, floored at machine precision.
    pub error_estimate: Vec<f64>,
}

/// The `k` lowest eigenvalues on `op` and on its `h/2` refinement,
/// combined as `(4 fine - coarse) / 3`.
pub fn lowest_eigenvalues(op: &DiscretizedOperator, k: usize) -> Result<OracleResult> {
    let coarse = op.smallest_eigenvalues(k)?;
    let fine = op.refined()?.smallest_eigenvalues(k)?;
    let eigenvalues = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    let error_estimate = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| ((f - c).abs() / 3.0).max(f64::EPSILON * f.abs().max(1.0)))
        .collect();
    Ok(OracleResult {
        channel: op.channel(),
        eigenvalues,
        coarse,
        fine,
        grid_params: (op.h(), op.r_max()),
        error_estimate,
    })
}

/// Dirichlet cutoff covering the lowest `k` states of a channel.
pub fn oracle_radius(channel: Channel, a_sq: f64, k: usize) -> f64 {
    let x_turn = (4 * (k.max(1) - 1) as u64 + 2 * u64::from(channel.l()) + 3) as f64;
    ((2.0 * x_turn).sqrt() + 12.0) / a_sq.sqrt()
}

/// Default operator for the lowest `k` states: `DEFAULT_GRID_POINTS` points
/// up to `oracle_radius`.
pub fn default_operator(cfg: &ModelConfig, channel: Channel, k: usize) -> Result<DiscretizedOperator> {
    grid_operator(cfg, channel, k, DEFAULT_GRID_POINTS, None)
}

/// Operator with explicit point count and optional cutoff override.
pub fn grid_operator(
    cfg: &ModelConfig,
    channel: Channel,
    k: usize,
    points: usize,
    r_max: Option<f64>,
) -> Result<DiscretizedOperator> {
    let t = effective_tension(cfg, channel)?;
    let r_max = r_max.unwrap_or_else(|| oracle_radius(channel, t.a_sq, k));
    discretize(cfg, channel, RadialGrid::uniform_to(r_max, points)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelCheck {
    pub n: u32,
    pub channel: Channel,
    pub analytic_cal_e: f64,
    pub numeric_cal_e: f64,
    pub abs_err: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn check(level: &Level, numeric: f64) -> LevelCheck {
    let analytic = level.cal_e;
    let abs_err = (analytic - numeric).abs();
    let tolerance = (VERIFY_REL_TOL * analytic).max(VERIFY_REL_TOL * level.a_sq);
    LevelCheck {
        n: level.n,
        channel: level.channel,
        analytic_cal_e: analytic,
        numeric_cal_e: numeric,
        abs_err,
        tolerance,
        pass: abs_err <= tolerance,
    }
}

/// Compares the closed-form `calE(n, kappa)` with the oracle.
pub fn verify_level(cfg: &ModelConfig, n: u32, channel: Channel) -> Result<LevelCheck> {
    Ok(verify_channel(cfg, channel, n)?.pop().expect("n + 1 checks"))
}

/// Checks every `n <= n_max` of a channel from a single pair of solves.
pub fn verify_channel(cfg: &ModelConfig, channel: Channel, n_max: u32) -> Result<Vec<LevelCheck>> {
    let k = n_max as usize + 1;
    let res = lowest_eigenvalues(&default_operator(cfg, channel, k)?, k)?;
    (0..=n_max)
        .map(|n| Ok(check(&Level::new(cfg, n, channel)?, res.eigenvalues[n as usize])))
        .collect()
}
