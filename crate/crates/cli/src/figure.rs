//! Level diagram: one column per `(l, j)` sector, a tick per level, and
//! dashed connectors between levels that become degenerate as `nu -> 0`.

use std::fmt::Write;

use fbosc::spectrum::enumerate_levels;
use fbosc::Level;

use crate::config::RunConfig;
use crate::num;

pub struct Figure {
    pub title: String,
    /// `(l, 2j)` per column, ordered by `l` then `j`.
    pub sectors: Vec<(u32, u32)>,
    pub levels: Vec<Level>,
    /// Index pairs into `levels`: `(l = j + 1/2 level, l = j - 1/2 level)`.
    pub connectors: Vec<(usize, usize)>,
}

/// `nu -> 0` partner of `(n, kappa > 0)`: `(n + 1, -kappa)` for
/// `lambda > 0`, `(n, -kappa)` for `lambda < 0`, none for `lambda = 0`.
fn partner_of(lambda: f64, level: &Level) -> Option<(u32, i64)> {
    let k = level.channel.kappa();
    if k <= 0 {
        return None;
    }
    if lambda > 0.0 {
        Some((level.n + 1, -k))
    } else if lambda < 0.0 {
        Some((level.n, -k))
    } else {
        None
    }
}

pub fn build(run: &RunConfig) -> Figure {
    let levels = enumerate_levels(&run.model, run.n_max, run.j_max).levels;
    let mut sectors: Vec<(u32, u32)> = levels
        .iter()
        .map(|l| (l.channel.l(), l.channel.j().twice()))
        .collect();
    sectors.sort_unstable();
    sectors.dedup();

    let mut connectors = Vec::new();
    for (i, level) in levels.iter().enumerate() {
        if let Some((n, k)) = partner_of(run.model.lambda, level) {
            if let Some(j) = levels
                .iter()
                .position(|o| o.n == n && o.channel.kappa() == k)
            {
                connectors.push((i, j));
            }
        }
    }
    let m = &run.model;
    Figure {
        title: format!("lambda={} nu={} m1={} m2={}", m.lambda, m.nu, m.m1, m.m2),
        sectors,
        levels,
        connectors,
    }
}

pub const CSV_HEADER: &str = "label,n,l,two_j,kappa,energy,partner";

pub fn render_csv(fig: &Figure) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (i, level) in fig.levels.iter().enumerate() {
        let partner = fig
            .connectors
            .iter()
            .find_map(|&(a, b)| match (a == i, b == i) {
                (true, _) => Some(fig.levels[b].label()),
                (_, true) => Some(fig.levels[a].label()),
                _ => None,
            })
            .unwrap_or_default();
        let c = level.channel;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            level.label(),
            level.n,
            c.l(),
            c.j().twice(),
            c.kappa(),
            num(level.energy),
            partner
        );
    }
    out
}

const COL_W: f64 = 90.0;
const TICK_INSET: f64 = 14.0;
const LEFT: f64 = 80.0;
const TOP: f64 = 50.0;
const PLOT_H: f64 = 520.0;
const BOTTOM: f64 = 60.0;

fn sector_name(l: u32, two_j: u32) -> String {
    format!("{}{}/2", fbosc::qnum::orbital_letter(l), two_j)
}

pub fn render_svg(fig: &Figure) -> String {
    let width = LEFT + COL_W * fig.sectors.len().max(1) as f64 + 20.0;
    let height = TOP + PLOT_H + BOTTOM;
    let (e_min, e_max) = fig
        .levels
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| {
            (lo.min(l.energy), hi.max(l.energy))
        });
    let span = if e_max > e_min { e_max - e_min } else { 1.0 };
    let y_of = |e: f64| TOP + (e_max - e) / span * PLOT_H;
    let column = |level: &Level| {
        let key = (level.channel.l(), level.channel.j().twice());
        fig.sectors.iter().position(|s| *s == key).unwrap_or(0)
    };
    let x_left = |col: usize| LEFT + col as f64 * COL_W + TICK_INSET;
    let x_right = |col: usize| LEFT + (col + 1) as f64 * COL_W - TICK_INSET;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, fig.title);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // energy axis
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{:.2}" stroke="black"/>"#,
        TOP + PLOT_H
    );
    for i in 0..=4 {
        let e = e_min + span * f64::from(i) / 4.0;
        let y = y_of(e);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{e:.3}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" transform="rotate(-90 16 {:.2})" text-anchor="middle">E</text>"#,
        TOP + PLOT_H / 2.0,
        TOP + PLOT_H / 2.0
    );

    for (col, &(l, two_j)) in fig.sectors.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text class="sector" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + (col as f64 + 0.5) * COL_W,
            TOP + PLOT_H + 30.0,
            sector_name(l, two_j)
        );
    }

    for &(a, b) in &fig.connectors {
        let (la, lb) = (&fig.levels[a], &fig.levels[b]);
        let (ca, cb) = (column(la), column(lb));
        let (x1, x2) = if ca < cb {
            (x_right(ca), x_left(cb))
        } else {
            (x_left(ca), x_right(cb))
        };
        let _ = writeln!(
            s,
            r#"<line class="connector" data-from="{}" data-to="{}" x1="{x1:.2}" y1="{:.2}" x2="{x2:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
            la.label(),
            lb.label(),
            y_of(la.energy),
            y_of(lb.energy)
        );
    }

    for level in &fig.levels {
        let col = column(level);
        let y = y_of(level.energy);
        let _ = writeln!(
            s,
            r#"<line class="level" data-label="{}" data-energy="{}" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-width="2"/>"#,
            level.label(),
            num(level.energy),
            x_left(col),
            x_right(col)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="9" text-anchor="middle">n={}</text>"#,
            LEFT + (col as f64 + 0.5) * COL_W,
            y - 3.0,
            level.n
        );
    }
    s.push_str("</svg>\n");
    s
}
