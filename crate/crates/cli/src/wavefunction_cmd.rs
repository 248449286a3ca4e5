use std::fmt::Write;

use fbosc::quadrature;
use fbosc::wavefn::{truncation_radius, QUADRATURE_REL_TOL};
use fbosc::{Channel, Level, RadialGrid, RadialSolution, RadialWaveFunction};
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::{num, CliError};

pub const DEFAULT_POINTS: usize = 400;

pub struct Sampled {
    pub solution: RadialSolution,
    /// `int (G^2 + F^2) dr` with the final `A`.
    pub norm_integral: f64,
}

pub fn sample(run: &RunConfig, n: u32, kappa: i64) -> Result<Sampled, CliError> {
    let invalid = |e: fbosc::Error| CliError::Validation(e.to_string());
    let channel = Channel::new(kappa).map_err(invalid)?;
    let level = Level::new(&run.model, n, channel).map_err(invalid)?;
    let wf = RadialWaveFunction::new(&run.model, &level).map_err(invalid)?;
    let r_max = run.r_max.unwrap_or_else(|| truncation_radius(&level));
    let points = run.grid_points.unwrap_or(DEFAULT_POINTS);
    let grid = RadialGrid::uniform_to(r_max, points).map_err(invalid)?;
    let norm_integral = quadrature::integrate(
        |r| wf.density(r),
        0.0,
        2.0 * truncation_radius(&level),
        QUADRATURE_REL_TOL,
    )
    .map_err(invalid)?;
    Ok(Sampled {
        solution: RadialSolution::from_wavefunction(&wf, grid),
        norm_integral,
    })
}

pub fn run(run: &RunConfig, n: u32, kappa: i64) -> Result<String, CliError> {
    let s = sample(run, n, kappa)?;
    let sol = &s.solution;
    let level = &sol.level;
    match run.format {
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "# level={} n={} kappa={} energy={} cal_e={}",
                level.label(),
                level.n,
                level.channel.kappa(),
                num(level.energy),
                num(level.cal_e)
            );
            let _ = writeln!(out, "# A={}", num(sol.norm));
            let _ = writeln!(out, "# norm={}", num(s.norm_integral));
            let _ = writeln!(out, "# norm_residual={}", num((s.norm_integral - 1.0).abs()));
            out.push_str("r,G,F\n");
            for ((r, g), f) in sol.grid.r_values().iter().zip(&sol.g).zip(&sol.f) {
                let _ = writeln!(out, "{},{},{}", num(*r), num(*g), num(*f));
            }
            Ok(out)
        }
        Format::Json => {
            let doc = json!({
                "schema": 1,
                "level": {
                    "label": level.label(),
                    "n": level.n,
                    "kappa": level.channel.kappa(),
                    "energy": level.energy,
                    "cal_e": level.cal_e,
                },
                "A": sol.norm,
                "norm": s.norm_integral,
                "norm_residual": (s.norm_integral - 1.0).abs(),
                "r": sol.grid.r_values(),
                "G": sol.g,
                "F": sol.f,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
            text.push('\n');
            Ok(text)
        }
        Format::Svg => Err(CliError::Validation(
            "wavefunction output supports csv or json".into(),
        )),
    }
}
