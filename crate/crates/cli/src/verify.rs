//! Invariant suite behind `fbosc verify`.

use fbosc::oracle::verify_channel;
use fbosc::spectrum::{
    degeneracy_groups, dirac_oscillator_limit, effective_tension, enumerate_levels,
    mass_shell_check, unphysical_ordering_scan, DEFAULT_DEGENERACY_TOL,
};
use fbosc::wavefn::{first_order_residual, overlap, truncation_radius};
use fbosc::{
    quadrature, Channel, GroupKind, Level, ModelConfig, RadialGrid, RadialSolution,
    RadialWaveFunction,
};
use serde::Serialize;

use crate::config::RunConfig;

const RESIDUAL_TOL: f64 = 1e-8;
const NORM_TOL: f64 = 1e-10;
const ORTHOGONALITY_TOL: f64 = 1e-8;
const ROUND_TRIP_TOL: f64 = 1e-12;
const ORDERING_L_MAX: u32 = 15;
const LIMIT_M2: [f64; 4] = [1e1, 1e2, 1e3, 1e4];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitEntry {
    pub n: u32,
    pub m2: f64,
    pub eps: f64,
    pub limit_value: f64,
    pub diff: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dirac_limit: Vec<LimitEntry>,
}

impl Report {
    fn new(suite: &'static str, checks: Vec<Check>, dirac_limit: Vec<LimitEntry>) -> Self {
        Report {
            schema: 1,
            suite,
            pass: checks.iter().all(|c| c.pass),
            checks,
            dirac_limit,
        }
    }
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn channels(run: &RunConfig) -> Vec<Channel> {
    let k_max = i64::from(run.j_max.twice() + 1) / 2;
    (1..=k_max)
        .flat_map(|k| [-k, k])
        .map(|k| Channel::new(k).expect("nonzero"))
        .filter(|&c| effective_tension(&run.model, c).is_ok())
        .collect()
}

fn oracle_agreement(run: &RunConfig) -> Check {
    let mut count = 0;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for c in channels(run) {
        match verify_channel(&run.model, c, run.n_max) {
            Ok(checks) => {
                for lc in checks {
                    count += 1;
                    worst = worst.max(lc.abs_err / lc.tolerance);
                    if !lc.pass {
                        failures.push(format!("n={} kappa={}", lc.n, c.kappa()));
                    }
                }
            }
            Err(e) => failures.push(format!("kappa={}: {e}", c.kappa())),
        }
    }
    check(
        "oracle_agreement",
        failures.is_empty(),
        format!(
            "{count} levels, worst error/tolerance {worst:.3e}{}",
            failure_suffix(&failures)
        ),
    )
}

fn failure_suffix(failures: &[String]) -> String {
    if failures.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", failures.join(", "))
    }
}

fn mass_shell_round_trip(cfg: &ModelConfig, levels: &[Level]) -> Check {
    let scale = cfg.m1.powi(2).max(cfg.m2.powi(2));
    let mut worst = 0.0f64;
    for level in levels {
        let back = mass_shell_check(level.energy, cfg.m1, cfg.m2).unwrap_or(f64::NAN);
        let err = (back - level.cal_e).abs() / level.cal_e.max(scale);
        worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
    }
    check(
        "mass_shell_round_trip",
        worst <= ROUND_TRIP_TOL,
        format!("{} levels, worst relative error {worst:.3e}", levels.len()),
    )
}

fn wavefunctions(cfg: &ModelConfig, levels: &[Level]) -> Vec<Check> {
    let mut worst_res = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut node_failures = Vec::new();
    let mut errors = Vec::new();
    for level in levels {
        let wf = match RadialWaveFunction::new(cfg, level) {
            Ok(wf) => wf,
            Err(e) => {
                errors.push(format!("{}: {e}", level.label()));
                continue;
            }
        };
        let r_max = truncation_radius(level);
        let grid = RadialGrid::uniform_to(r_max, 2000).expect("valid grid");
        let sol = RadialSolution::from_wavefunction(&wf, grid);
        match first_order_residual(&sol, cfg) {
            Ok(res) => worst_res = worst_res.max(res.relative()),
            Err(e) => errors.push(format!("{}: {e}", level.label())),
        }
        match quadrature::integrate(|r| wf.density(r), 0.0, 2.0 * r_max, 1e-13) {
            Ok(v) => worst_norm = worst_norm.max((v - 1.0).abs()),
            Err(e) => errors.push(format!("{}: {e}", level.label())),
        }
        if sol.g_nodes() != level.n as usize {
            node_failures.push(level.label());
        }
    }
    vec![
        check(
            "first_order_residual",
            worst_res <= RESIDUAL_TOL && errors.is_empty(),
            format!(
                "{} levels, worst relative residual {worst_res:.3e}{}",
                levels.len(),
                failure_suffix(&errors)
            ),
        ),
        check(
            "normalization",
            worst_norm <= NORM_TOL && errors.is_empty(),
            format!("worst |norm - 1| {worst_norm:.3e}"),
        ),
        check(
            "node_rule",
            node_failures.is_empty(),
            format!("G has n interior zeros{}", failure_suffix(&node_failures)),
        ),
    ]
}

fn orthogonality(cfg: &ModelConfig, levels: &[Level]) -> Check {
    let mut worst = 0.0f64;
    let mut pairs = 0;
    let mut errors = Vec::new();
    let mut kappas: Vec<i64> = levels.iter().map(|l| l.channel.kappa()).collect();
    kappas.sort_unstable();
    kappas.dedup();
    for k in kappas {
        let wfs: Vec<RadialWaveFunction> = levels
            .iter()
            .filter(|l| l.channel.kappa() == k)
            .filter_map(|l| RadialWaveFunction::new(cfg, l).ok())
            .collect();
        for (i, a) in wfs.iter().enumerate() {
            for b in &wfs[i + 1..] {
                match overlap(a, b) {
                    Ok(o) => worst = worst.max(o.abs()),
                    Err(e) => errors.push(e.to_string()),
                }
                pairs += 1;
            }
        }
    }
    check(
        "orthogonality",
        worst < ORTHOGONALITY_TOL && errors.is_empty(),
        format!("{pairs} same-kappa pairs, max |overlap| {worst:.3e}"),
    )
}

fn degeneracy_pattern(cfg: &ModelConfig, levels: &[Level]) -> Vec<Check> {
    let groups = degeneracy_groups(levels, DEFAULT_DEGENERACY_TOL);
    let count = |kind| groups.iter().filter(|g| g.kind == kind).count();
    let ground = count(GroupKind::GroundStateFamily);

    // calE(0, kappa < 0) = 0 exactly when nu - lambda*kappa > 0 for kappa < 0
    let threshold_members = levels
        .iter()
        .filter(|l| l.n == 0 && l.channel.kappa() < 0 && l.s > 0)
        .count();
    let expect_ground = threshold_members >= 2;
    let mut checks = vec![check(
        "ground_state_family",
        (ground == 1) == expect_ground && ground <= 1,
        format!(
            "{ground} ground-state cluster(s), expected {}; groups: {} singleton, {} shifted-n doublet, {} same-n doublet, {} accidental",
            usize::from(expect_ground),
            count(GroupKind::Singleton),
            count(GroupKind::ParityDoubletShiftedN),
            count(GroupKind::ParityDoubletSameN),
            count(GroupKind::Accidental),
        ),
    )];

    if cfg.nu == 0.0 && cfg.lambda != 0.0 {
        let mut worst = 0.0f64;
        let mut pairs = 0;
        for up in levels.iter().filter(|l| l.channel.kappa() > 0) {
            let want_n = if cfg.lambda > 0.0 { up.n + 1 } else { up.n };
            if let Some(lo) = levels
                .iter()
                .find(|l| l.channel.kappa() == -up.channel.kappa() && l.n == want_n)
            {
                worst = worst.max((up.energy - lo.energy).abs());
                pairs += 1;
            }
        }
        checks.push(check(
            "parity_doubling",
            pairs > 0 && worst <= 1e-12,
            format!(
                "{pairs} {} pairs, max |dE| {worst:.3e}",
                if cfg.lambda > 0.0 { "shifted-n" } else { "same-n" }
            ),
        ));
    }
    checks
}

fn ordering(run: &RunConfig) -> Check {
    let mut inversions = Vec::new();
    for n in 0..=run.n_max {
        for (l, l1) in unphysical_ordering_scan(&run.model, n, ORDERING_L_MAX) {
            inversions.push(format!("n={n} ({l},{l1})"));
        }
    }
    if run.model.is_ordering_safe() {
        check(
            "level_ordering",
            inversions.is_empty(),
            format!("ordering-safe couplings{}", failure_suffix(&inversions)),
        )
    } else {
        check(
            "level_ordering",
            true,
            format!(
                "ordering-unsafe couplings (forced); inversions: {}",
                inversions.join(", ")
            ),
        )
    }
}

pub fn model_suite(run: &RunConfig) -> Report {
    let levels = enumerate_levels(&run.model, run.n_max, run.j_max).levels;
    let mut checks = vec![
        oracle_agreement(run),
        mass_shell_round_trip(&run.model, &levels),
    ];
    checks.extend(wavefunctions(&run.model, &levels));
    checks.push(orthogonality(&run.model, &levels));
    checks.extend(degeneracy_pattern(&run.model, &levels));
    checks.push(ordering(run));
    Report::new("model", checks, Vec::new())
}

pub fn dirac_limit_suite(m1: f64, omega: f64) -> Report {
    let channel = Channel::new(-1).expect("nonzero");
    let mut table = Vec::new();
    let mut checks = Vec::new();
    for n in 0..=2 {
        let rows = match dirac_oscillator_limit(m1, omega, n, channel, &LIMIT_M2) {
            Ok(rows) => rows,
            Err(e) => {
                checks.push(check("dirac_limit", false, format!("n={n}: {e}")));
                continue;
            }
        };
        table.extend(rows.iter().map(|r| LimitEntry {
            n,
            m2: r.m2,
            eps: r.eps,
            limit_value: r.limit_value,
            diff: r.diff,
        }));
        let (d3, d4) = (rows[2].diff, rows[3].diff);
        let (pass, detail) = if d3 <= 1e-12 && d4 <= 1e-12 {
            (true, format!("n={n}: eps = m1 at every m2 (calE = 0)"))
        } else {
            let ratio = d3 / d4;
            (
                (ratio - 10.0).abs() <= 2.0,
                format!("n={n}: |eps - limit| ratio m2=1e3/1e4 = {ratio:.4}"),
            )
        };
        checks.push(check("dirac_limit", pass, detail));
    }
    Report::new("dirac_limit", checks, table)
}
