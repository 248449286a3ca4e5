use fbosc::spectrum::{
    degeneracy_groups, enumerate_levels, unphysical_ordering_scan, DEFAULT_DEGENERACY_TOL,
};
use fbosc::{GroupKind, Level};
use serde::Serialize;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::{figure, num, CliError};

/// Orbital momenta scanned for level-ordering inversions.
const ORDERING_SCAN_L_MAX: u32 = 20;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub label: String,
    pub n: u32,
    pub l: u32,
    pub two_j: u32,
    pub parity: i32,
    pub kappa: i64,
    pub a_sq: f64,
    pub s: i32,
    pub cal_e: f64,
    pub energy: f64,
    pub group: usize,
    pub group_kind: &'static str,
}

pub struct Table {
    pub rows: Vec<Row>,
    pub groups: Vec<(usize, GroupKind, Vec<String>)>,
    pub warnings: Vec<String>,
}

pub fn build(run: &RunConfig) -> Table {
    let spectrum = enumerate_levels(&run.model, run.n_max, run.j_max);
    let groups = degeneracy_groups(&spectrum.levels, DEFAULT_DEGENERACY_TOL);

    let mut rows = Vec::with_capacity(spectrum.levels.len());
    let mut group_summary = Vec::with_capacity(groups.len());
    for (id, g) in groups.iter().enumerate() {
        for level in &g.members {
            let c = level.channel;
            rows.push(Row {
                label: level.label(),
                n: level.n,
                l: c.l(),
                two_j: c.j().twice(),
                parity: c.parity().sign(),
                kappa: c.kappa(),
                a_sq: level.a_sq,
                s: level.s,
                cal_e: level.cal_e,
                energy: level.energy,
                group: id,
                group_kind: g.kind.as_str(),
            });
        }
        group_summary.push((id, g.kind, g.members.iter().map(Level::label).collect()));
    }

    let mut warnings: Vec<String> = spectrum
        .skipped
        .iter()
        .map(|s| format!("skipped channel kappa={}: {}", s.channel.kappa(), s.reason))
        .collect();
    if !run.model.is_ordering_safe() {
        warnings.push(format!(
            "couplings lambda={} nu={} are ordering-unsafe",
            run.model.lambda, run.model.nu
        ));
    }
    let l_max = ORDERING_SCAN_L_MAX.max(run.j_max.twice() / 2 + 1);
    for n in 0..=run.n_max {
        for (l, l1) in unphysical_ordering_scan(&run.model, n, l_max) {
            warnings.push(format!(
                "level-ordering inversion: n={n} (l={l}, l={l1}) E(kappa={l1}) < E(kappa={l})"
            ));
        }
    }

    Table {
        rows,
        groups: group_summary,
        warnings,
    }
}

pub const CSV_HEADER: &str = "label,n,l,two_j,parity,kappa,a_sq,s,cal_e,energy,group,group_kind";

pub fn to_csv(table: &Table) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.label,
            r.n,
            r.l,
            r.two_j,
            r.parity,
            r.kappa,
            num(r.a_sq),
            r.s,
            num(r.cal_e),
            num(r.energy),
            r.group,
            r.group_kind
        ));
    }
    out
}

pub fn to_json(run: &RunConfig, table: &Table) -> String {
    let groups: Vec<_> = table
        .groups
        .iter()
        .map(|(id, kind, members)| json!({ "id": id, "kind": kind.as_str(), "members": members }))
        .collect();
    let doc = json!({
        "schema": 1,
        "model": {
            "m1": run.model.m1,
            "m2": run.model.m2,
            "lambda": run.model.lambda,
            "nu": run.model.nu,
            "ordering_safe": run.model.is_ordering_safe(),
            "preset": run.preset.map(|p| p.as_str()),
        },
        "n_max": run.n_max,
        "two_j_max": run.j_max.twice(),
        "levels": table.rows,
        "groups": groups,
        "warnings": table.warnings,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Returns the document and any warnings destined for stderr.
pub fn run(run: &RunConfig) -> Result<(String, Vec<String>), CliError> {
    let table = build(run);
    let body = match run.format {
        Format::Csv => to_csv(&table),
        Format::Json => to_json(run, &table),
        Format::Svg => figure::render_svg(&figure::build(run)),
    };
    let stderr = if run.format == Format::Json {
        Vec::new()
    } else {
        table.warnings.clone()
    };
    Ok((body, stderr))
}
