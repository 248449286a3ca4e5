//! Closed-form bound-state spectrum.
//!
//! In channel `kappa` the second-order radial equation is a radial harmonic
//! oscillator with frequency `a^2 = |nu - lambda*kappa|` shifted by the
//! spin-orbit constant `(nu - lambda*kappa)(2 kappa - 1)`. Its eigenvalue
//!
//! ```text
//! calE = a^2 [4n + 2l + 3 + s(2 kappa - 1)],    s = sgn(nu - lambda*kappa)
//! ```
//!
//! is tied to the total two-body energy by the mass-shell relation
//! `calE = E^2/4 - (m1^2 + m2^2)/2 + (m1^2 - m2^2)^2 / (4 E^2)`, whose
//! positive root is `E = sqrt(m1^2 + calE) + sqrt(m2^2 + calE)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::qnum::{Channel, HalfInt, ModelConfig};

/// Default relative tolerance for clustering degenerate energies.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTension {
    /// `|nu - lambda*kappa|`
    pub a_sq: f64,
    /// `sgn(nu - lambda*kappa)`, never zero.
    pub s: i32,
}

impl EffectiveTension {
    pub fn a(&self) -> f64 {
        self.a_sq.sqrt()
    }

    /// `nu - lambda*kappa` with its sign restored.
    pub fn signed(&self) -> f64 {
        f64::from(self.s) * self.a_sq
    }
}

pub fn effective_tension(cfg: &ModelConfig, c: Channel) -> Result<EffectiveTension> {
    let b = cfg.nu - cfg.lambda * c.kappa() as f64;
    if b == 0.0 {
        return Err(Error::DegenerateChannel { kappa: c.kappa() });
    }
    Ok(EffectiveTension {
        a_sq: b.abs(),
        s: if b > 0.0 { 1 } else { -1 },
    })
}

/// Integer bracket `4n + 2l + 3 + s(2 kappa - 1)` of the oscillator eigenvalue.
fn eigenvalue_bracket(n: u32, c: Channel, s: i32) -> i64 {
    4 * i64::from(n) + 2 * i64::from(c.l()) + 3 + i64::from(s) * (2 * c.kappa() - 1)
}

pub fn oscillator_eigenvalue(cfg: &ModelConfig, n: u32, c: Channel) -> Result<f64> {
    let t = effective_tension(cfg, c)?;
    Ok(t.a_sq * eigenvalue_bracket(n, c, t.s) as f64)
}

/// Positive-branch total energy for oscillator eigenvalue `cal_e`.
pub fn total_energy(cal_e: f64, m1: f64, m2: f64) -> Result<f64> {
    if !(m1 > 0.0 && m2 > 0.0) {
        return Err(Error::NonPositiveMass { m1, m2 });
    }
    let p = m1 * m1 + cal_e;
    let q = m2 * m2 + cal_e;
    if !(p >= 0.0 && q >= 0.0) || !cal_e.is_finite() {
        return Err(Error::Domain(format!(
            "calE = {cal_e} below -min(m1^2, m2^2); no real energy"
        )));
    }
    // sqrt(p) + sqrt(q) squares to m1^2 + m2^2 + 2calE + 2 sqrt(pq)
    Ok(p.sqrt() + q.sqrt())
}

/// Mass-shell relation: recovers `calE` from the total energy.
pub fn mass_shell_check(energy: f64, m1: f64, m2: f64) -> Result<f64> {
    if !(energy > 0.0) {
        return Err(Error::Domain(format!("energy must be positive, got {energy}")));
    }
    // factored form of E^2/4 - (m1^2+m2^2)/2 + (m1^2-m2^2)^2/(4E^2), avoiding cancellation
    let e = energy;
    Ok((e + m1 + m2) * (e + m1 - m2) * (e - m1 - m2) * (e - m1 + m2) / (4.0 * e * e))
}

/// `E - m2`, the energy above the boson rest mass, without cancellation.
pub fn energy_above_m2(cal_e: f64, m1: f64, m2: f64) -> Result<f64> {
    total_energy(cal_e, m1, m2)?;
    let q = m2 * m2 + cal_e;
    Ok((m1 * m1 + cal_e).sqrt() + cal_e / (q.sqrt() + m2))
}

/// One bound state `(n, kappa)` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub n: u32,
    pub channel: Channel,
    pub a_sq: f64,
    pub s: i32,
    pub cal_e: f64,
    pub energy: f64,
}

impl Level {
    pub fn new(cfg: &ModelConfig, n: u32, channel: Channel) -> Result<Self> {
        let t = effective_tension(cfg, channel)?;
        let cal_e = t.a_sq * eigenvalue_bracket(n, channel, t.s) as f64;
        let energy = total_energy(cal_e, cfg.m1, cfg.m2)?;
        Ok(Level {
            n,
            channel,
            a_sq: t.a_sq,
            s: t.s,
            cal_e,
            energy,
        })
    }

    pub fn tension(&self) -> EffectiveTension {
        EffectiveTension {
            a_sq: self.a_sq,
            s: self.s,
        }
    }

    pub fn label(&self) -> String {
        crate::qnum::spectroscopic_label(self.n, self.channel)
    }

    /// Sort key: `(E, j, l, n)`.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        self.energy
            .total_cmp(&other.energy)
            .then(self.channel.j().cmp(&other.channel.j()))
            .then(self.channel.l().cmp(&other.channel.l()))
            .then(self.n.cmp(&other.n))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedChannel {
    pub channel: Channel,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<Level>,
    pub skipped: Vec<SkippedChannel>,
}

/// All levels with `n <= n_max` and `j <= j_max`, both signs of kappa,
/// sorted by `(E, j, l, n)`.
pub fn enumerate_levels(cfg: &ModelConfig, n_max: u32, j_max: HalfInt) -> Spectrum {
    let k_max = i64::from(j_max.twice() + 1) / 2;
    let mut levels = Vec::new();
    let mut skipped = Vec::new();
    for k in 1..=k_max {
        for kappa in [-k, k] {
            let channel = Channel::new(kappa).expect("kappa is nonzero");
            match effective_tension(cfg, channel) {
                Ok(_) => {
                    for n in 0..=n_max {
                        match Level::new(cfg, n, channel) {
                            Ok(level) => levels.push(level),
                            Err(e) => skipped.push(SkippedChannel {
                                channel,
                                reason: e.to_string(),
                            }),
                        }
                    }
                }
                Err(e) => skipped.push(SkippedChannel {
                    channel,
                    reason: e.to_string(),
                }),
            }
        }
    }
    levels.sort_by(Level::cmp_key);
    Spectrum { levels, skipped }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Singleton,
    /// Levels sitting at threshold `E = m1 + m2` (`calE = 0`).
    GroundStateFamily,
    /// `(n, j, l = j + 1/2)` with `(n + 1, j, l = j - 1/2)`.
    ParityDoubletShiftedN,
    /// `(n, j, l = j + 1/2)` with `(n, j, l = j - 1/2)`.
    ParityDoubletSameN,
    Accidental,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Singleton => "singleton",
            GroupKind::GroundStateFamily => "ground_state_family",
            GroupKind::ParityDoubletShiftedN => "parity_doublet_shifted_n",
            GroupKind::ParityDoubletSameN => "parity_doublet_same_n",
            GroupKind::Accidental => "accidental",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyGroup {
    pub kind: GroupKind,
    pub members: Vec<Level>,
    /// Index pairs into `members` forming opposite-parity doublets
    /// `(l = j + 1/2 member, l = j - 1/2 member)`.
    pub doublets: Vec<(usize, usize)>,
}

/// Partners of a `kappa > 0` level under the two parity-doubling rules.
fn doublet_partner(upper: &Level, lower: &Level) -> Option<GroupKind> {
    if upper.channel.kappa() <= 0 || lower.channel.kappa() != -upper.channel.kappa() {
        return None;
    }
    if lower.n == upper.n + 1 {
        Some(GroupKind::ParityDoubletShiftedN)
    } else if lower.n == upper.n {
        Some(GroupKind::ParityDoubletSameN)
    } else {
        None
    }
}

fn classify(members: &[Level]) -> (GroupKind, Vec<(usize, usize)>) {
    let mut doublets = Vec::new();
    let mut rules = Vec::new();
    for (i, up) in members.iter().enumerate() {
        for (k, lo) in members.iter().enumerate() {
            if let Some(rule) = doublet_partner(up, lo) {
                doublets.push((i, k));
                rules.push(rule);
            }
        }
    }
    if members.len() == 1 {
        return (GroupKind::Singleton, doublets);
    }
    if members.iter().all(|l| l.cal_e == 0.0) {
        return (GroupKind::GroundStateFamily, doublets);
    }
    for kind in [GroupKind::ParityDoubletShiftedN, GroupKind::ParityDoubletSameN] {
        let mut covered = vec![false; members.len()];
        for (&(i, k), &rule) in doublets.iter().zip(&rules) {
            if rule == kind {
                covered[i] = true;
                covered[k] = true;
            }
        }
        if covered.iter().all(|&c| c) {
            return (kind, doublets);
        }
    }
    (GroupKind::Accidental, doublets)
}

/// Maximal clusters of levels whose sorted energies differ by less than
/// `rel_tol * max(E)` between neighbours.
pub fn degeneracy_groups(levels: &[Level], rel_tol: f64) -> Vec<DegeneracyGroup> {
    let mut sorted = levels.to_vec();
    sorted.sort_by(Level::cmp_key);
    let Some(e_max) = sorted.iter().map(|l| l.energy).reduce(f64::max) else {
        return Vec::new();
    };
    let tol = rel_tol * e_max;

    let mut clusters: Vec<Vec<Level>> = Vec::new();
    for level in sorted {
        match clusters.last_mut() {
            Some(last) if level.energy - last.last().unwrap().energy < tol => last.push(level),
            _ => clusters.push(vec![level]),
        }
    }
    clusters
        .into_iter()
        .map(|members| {
            let (kind, doublets) = classify(&members);
            DegeneracyGroup {
                kind,
                members,
                doublets,
            }
        })
        .collect()
}

/// Pairs `(l, l + 1)` with `l <= l_max` for which `E(n, kappa = l + 1)`
/// lies strictly below `E(n, kappa = l)`. Degenerate channels are skipped.
pub fn unphysical_ordering_scan(cfg: &ModelConfig, n: u32, l_max: u32) -> Vec<(u32, u32)> {
    let mut inversions = Vec::new();
    for l in 1..=l_max {
        let lower = Channel::new(i64::from(l)).expect("l >= 1");
        let upper = Channel::new(i64::from(l) + 1).expect("l >= 1");
        if let (Ok(a), Ok(b)) = (Level::new(cfg, n, lower), Level::new(cfg, n, upper)) {
            if b.energy < a.energy {
                inversions.push((l, l + 1));
            }
        }
    }
    inversions
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow {
    pub m2: f64,
    /// `E - m2`
    pub eps: f64,
    /// one-body Dirac-oscillator energy `sqrt(m1^2 + calE)`
    pub limit_value: f64,
    pub diff: f64,
}

/// Heavy-boson limit with `lambda = 0`, `nu = m1 * omega`: the energy above
/// `m2` approaches the one-body Dirac-oscillator value as `O(1/m2)`.
pub fn dirac_oscillator_limit(
    m1: f64,
    omega: f64,
    n: u32,
    c: Channel,
    m2_sequence: &[f64],
) -> Result<Vec<LimitRow>> {
    if !(m1 > 0.0) {
        return Err(Error::NonPositiveMass { m1, m2: f64::NAN });
    }
    m2_sequence
        .iter()
        .map(|&m2| {
            let cfg = ModelConfig::new(m1, m2, 0.0, m1 * omega)?;
            let cal_e = oscillator_eigenvalue(&cfg, n, c)?;
            let eps = energy_above_m2(cal_e, m1, m2)?;
            let limit_value = (m1 * m1 + cal_e).sqrt();
            Ok(LimitRow {
                m2,
                eps,
                limit_value,
                diff: (eps - limit_value).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn ch(k: i64) -> Channel {
        Channel::new(k).unwrap()
    }

    fn cfg(lambda: f64, nu: f64) -> ModelConfig {
        ModelConfig::forced(1.0, 2.0, lambda, nu).unwrap()
    }

    fn half(twice: u32) -> HalfInt {
        HalfInt::from_twice(twice).unwrap()
    }

    /// Eq. 31 evaluated literally, as an independent route.
    fn mass_shell_literal(e: f64, m1: f64, m2: f64) -> f64 {
        e * e / 4.0 - (m1 * m1 + m2 * m2) / 2.0 + (m1 * m1 - m2 * m2).powi(2) / (4.0 * e * e)
    }

    /// The energy formula written as printed, nested square roots.
    fn total_energy_literal(cal_e: f64, m1: f64, m2: f64) -> f64 {
        (m1 * m1 + m2 * m2 + 2.0 * cal_e + 2.0 * ((m1 * m1 + cal_e) * (m2 * m2 + cal_e)).sqrt())
            .sqrt()
    }

    #[test]
    fn effective_tension_examples() {
        let t = effective_tension(&cfg(1.0, 0.1), ch(-1)).unwrap();
        assert_relative_eq!(t.a_sq, 1.1, epsilon = 1e-15);
        assert_eq!(t.s, 1);
        let t = effective_tension(&cfg(1.0, 0.1), ch(1)).unwrap();
        assert_relative_eq!(t.a_sq, 0.9, epsilon = 1e-15);
        assert_eq!(t.s, -1);
        assert_eq!(
            effective_tension(&cfg(0.1, 1.0), ch(10)),
            Err(Error::DegenerateChannel { kappa: 10 })
        );
    }

    #[test]
    fn oscillator_eigenvalue_examples() {
        let c = cfg(1.0, 0.1);
        assert_eq!(oscillator_eigenvalue(&c, 0, ch(-1)).unwrap(), 0.0);
        assert_relative_eq!(oscillator_eigenvalue(&c, 0, ch(1)).unwrap(), 3.6, epsilon = 1e-14);
        assert_relative_eq!(oscillator_eigenvalue(&c, 1, ch(-1)).unwrap(), 4.4, epsilon = 1e-14);
    }

    #[test]
    fn total_energy_examples() {
        assert_eq!(total_energy(0.0, 1.0, 2.0).unwrap(), 3.0);
        assert_eq!(total_energy(0.0, 1.7, 1.7).unwrap(), 3.4);
        let e = total_energy(3.6, 1.0, 2.0).unwrap();
        assert_relative_eq!(e, total_energy_literal(3.6, 1.0, 2.0), max_relative = 1e-14);
        assert!((e - 4.9016).abs() < 5e-5, "{e}");
        assert!(total_energy(-2.0, 1.0, 2.0).is_err());
        assert!(total_energy(0.5, 0.0, 2.0).is_err());
    }

    #[test]
    fn mass_shell_examples() {
        assert_eq!(mass_shell_check(3.0, 1.0, 2.0).unwrap(), 0.0);
        assert_eq!(mass_shell_check(4.6, 2.3, 2.3).unwrap(), 0.0);
        let e = total_energy(4.4, 1.0, 2.0).unwrap();
        assert_relative_eq!(mass_shell_check(e, 1.0, 2.0).unwrap(), 4.4, max_relative = 1e-12);
        assert_relative_eq!(
            mass_shell_check(e, 1.0, 2.0).unwrap(),
            mass_shell_literal(e, 1.0, 2.0),
            max_relative = 1e-12
        );
        assert!(mass_shell_check(0.0, 1.0, 2.0).is_err());
        assert!(mass_shell_check(-3.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn fig1_ground_family() {
        let s = enumerate_levels(&cfg(1.0, 0.1), 0, half(5));
        let ground: Vec<String> = s
            .levels
            .iter()
            .filter(|l| l.energy == 3.0)
            .map(Level::label)
            .collect();
        assert_eq!(ground, ["0s_1/2", "0p_3/2", "0d_5/2"]);
        assert!(s.skipped.is_empty());
    }

    #[test]
    fn tensor_only_is_equidistant() {
        let s = enumerate_levels(&cfg(0.0, 0.1), 2, half(1));
        let only: Vec<&Level> = s.levels.iter().filter(|l| l.channel.kappa() == -1).collect();
        assert_eq!(only.len(), 3);
        for w in only.windows(2) {
            assert!(w[1].energy > w[0].energy);
            assert_relative_eq!(w[1].cal_e - w[0].cal_e, 0.4, max_relative = 1e-12);
        }
    }

    #[test]
    fn fig2_small_has_no_degeneracy() {
        let s = enumerate_levels(&cfg(-1.0, 0.1), 1, half(3));
        assert_eq!(s.levels.len(), 8);
        for (i, a) in s.levels.iter().enumerate() {
            for b in &s.levels[i + 1..] {
                assert!((a.energy - b.energy).abs() > 1e-6);
            }
        }
    }

    #[test]
    fn enumeration_records_degenerate_channels() {
        // nu - lambda*kappa = 0 at kappa = 1
        let s = enumerate_levels(&cfg(1.0, 1.0), 1, half(3));
        assert_eq!(s.skipped.len(), 1);
        assert_eq!(s.skipped[0].channel.kappa(), 1);
        assert_eq!(s.levels.len(), 6);
    }

    #[test]
    fn sort_is_deterministic_on_ties() {
        let s = enumerate_levels(&cfg(1.0, 0.0), 3, half(7));
        for w in s.levels.windows(2) {
            assert_ne!(w[0].cmp_key(&w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn groups_lambda_positive_nu_zero_are_shifted_doublets() {
        let s = enumerate_levels(&cfg(1.0, 0.0), 3, half(7));
        let groups = degeneracy_groups(&s.levels, DEFAULT_DEGENERACY_TOL);
        let mut seen_doublet = false;
        for g in &groups {
            for &(i, k) in &g.doublets {
                let (up, lo) = (&g.members[i], &g.members[k]);
                assert!(up.channel.kappa() > 0);
                assert_eq!(lo.n, up.n + 1);
                seen_doublet = true;
            }
            if g.kind == GroupKind::ParityDoubletShiftedN {
                assert!(g.members.len() >= 2);
            }
        }
        assert!(seen_doublet);
        assert!(groups.iter().any(|g| g.kind == GroupKind::ParityDoubletShiftedN));
        assert!(!groups.iter().any(|g| g.kind == GroupKind::ParityDoubletSameN));
    }

    #[test]
    fn groups_lambda_negative_nu_zero_are_same_n_doublets() {
        let s = enumerate_levels(&cfg(-1.0, 0.0), 3, half(7));
        let groups = degeneracy_groups(&s.levels, DEFAULT_DEGENERACY_TOL);
        for g in &groups {
            assert_eq!(g.kind, GroupKind::ParityDoubletSameN, "{g:?}");
            assert_eq!(g.members.len(), 2);
            let (up, lo) = (&g.members[g.doublets[0].0], &g.members[g.doublets[0].1]);
            assert_eq!(up.n, lo.n);
            assert_eq!(up.channel.j(), lo.channel.j());
        }
    }

    #[test]
    fn groups_fig1_only_ground_family() {
        let s = enumerate_levels(&cfg(1.0, 0.1), 3, half(7));
        let groups = degeneracy_groups(&s.levels, DEFAULT_DEGENERACY_TOL);
        let multi: Vec<_> = groups.iter().filter(|g| g.members.len() > 1).collect();
        assert_eq!(multi.len(), 1);
        assert_eq!(multi[0].kind, GroupKind::GroundStateFamily);
        assert_eq!(multi[0].members.len(), 4);
        assert!(multi[0].members.iter().all(|l| l.energy == 3.0));
    }

    #[test]
    fn ordering_scan_examples() {
        assert!(unphysical_ordering_scan(&cfg(1.0, 0.1), 0, 10).is_empty());
        let inv = unphysical_ordering_scan(&cfg(0.15, 1.0), 0, 10);
        assert!(inv.contains(&(6, 7)), "{inv:?}");
        let e6 = oscillator_eigenvalue(&cfg(0.15, 1.0), 0, ch(6)).unwrap();
        let e7 = oscillator_eigenvalue(&cfg(0.15, 1.0), 0, ch(7)).unwrap();
        assert_relative_eq!(e6, 2.6, max_relative = 1e-12);
        assert_relative_eq!(e7, 0.2, max_relative = 1e-12);
        assert!(unphysical_ordering_scan(&cfg(0.0, 1.0), 0, 10).is_empty());
    }

    #[test]
    fn dirac_limit_examples() {
        let rows = dirac_oscillator_limit(1.0, 0.5, 0, ch(-1), &[1e4]).unwrap();
        assert!(rows[0].diff < 1e-3);
        // calE = 0 channel sits exactly at eps = m1
        for r in dirac_oscillator_limit(1.0, 0.5, 0, ch(-1), &[1.0, 10.0, 1e3, 1e4]).unwrap() {
            assert_eq!(r.eps, 1.0);
        }
        let rows = dirac_oscillator_limit(1.0, 0.5, 1, ch(-1), &[1e3, 1e4]).unwrap();
        let ratio = rows[0].diff / rows[1].diff;
        assert!((ratio - 10.0).abs() < 0.2, "{ratio}");
        assert!(dirac_oscillator_limit(-1.0, 0.5, 1, ch(-1), &[1e3]).is_err());
        assert!(dirac_oscillator_limit(1.0, 0.5, 1, ch(-1), &[0.0]).is_err());
    }

    #[test]
    fn non_equidistant_unless_tensor_only() {
        let gap = |c: &ModelConfig, k| {
            oscillator_eigenvalue(c, 1, ch(k)).unwrap() - oscillator_eigenvalue(c, 0, ch(k)).unwrap()
        };
        let c = cfg(1.0, 0.1);
        assert!((gap(&c, 1) - gap(&c, -1)).abs() > 1e-3);
        let c = cfg(0.0, 0.3);
        for k in [-3, -2, -1, 1, 2, 3] {
            for n in 0..5 {
                let d = oscillator_eigenvalue(&c, n + 1, ch(k)).unwrap()
                    - oscillator_eigenvalue(&c, n, ch(k)).unwrap();
                assert_relative_eq!(d, 1.2, max_relative = 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn mass_shell_round_trip(cal_e in 0.0f64..1e3, m1 in 0.1f64..1e3, m2 in 0.1f64..1e3) {
            let e = total_energy(cal_e, m1, m2).unwrap();
            let back = mass_shell_check(e, m1, m2).unwrap();
            // E carries calE only to ~eps * (m1^2 + m2^2) absolute
            let scale = cal_e.max(m1 * m1).max(m2 * m2);
            prop_assert!((back - cal_e).abs() <= 1e-12 * scale, "{back} vs {cal_e}");
        }

        #[test]
        fn total_energy_matches_literal_form(cal_e in 0.0f64..1e3, m1 in 0.1f64..1e3, m2 in 0.1f64..1e3) {
            let e = total_energy(cal_e, m1, m2).unwrap();
            prop_assert!((e - total_energy_literal(cal_e, m1, m2)).abs() <= 1e-13 * e);
        }

        #[test]
        fn total_energy_monotone_and_threshold(a in 0.0f64..1e3, d in 1e-6f64..10.0, m1 in 0.1f64..1e3, m2 in 0.1f64..1e3) {
            let ea = total_energy(a, m1, m2).unwrap();
            let eb = total_energy(a + d, m1, m2).unwrap();
            prop_assert!(eb > ea);
            prop_assert!(eb > m1 + m2);
            prop_assert_eq!(total_energy(0.0, m1, m2).unwrap(), m1 + m2);
        }

        #[test]
        fn total_energy_mass_symmetric(cal_e in 0.0f64..1e3, m1 in 0.1f64..1e3, m2 in 0.1f64..1e3) {
            prop_assert_eq!(total_energy(cal_e, m1, m2).unwrap(), total_energy(cal_e, m2, m1).unwrap());
        }

        #[test]
        fn safe_configs_have_nonnegative_cal_e(lambda in -3.0f64..3.0, frac in -1.0f64..1.0, n in 0u32..6, k in -8i64..=8) {
            prop_assume!(k != 0 && lambda != 0.0);
            let c = ModelConfig::new(1.0, 2.0, lambda, frac * lambda.abs()).unwrap();
            if let Ok(e) = oscillator_eigenvalue(&c, n, ch(k)) {
                prop_assert!(e >= 0.0);
            }
        }

        #[test]
        fn parity_doubling_nu_zero(lambda in 0.05f64..4.0, n in 0u32..6, k in 1i64..8) {
            let pos = cfg(lambda, 0.0);
            prop_assert_eq!(
                oscillator_eigenvalue(&pos, n, ch(k)).unwrap(),
                oscillator_eigenvalue(&pos, n + 1, ch(-k)).unwrap()
            );
            let neg = cfg(-lambda, 0.0);
            prop_assert_eq!(
                oscillator_eigenvalue(&neg, n, ch(k)).unwrap(),
                oscillator_eigenvalue(&neg, n, ch(-k)).unwrap()
            );
        }

        #[test]
        fn ground_family_lambda_positive(lambda in 0.05f64..4.0, frac in 0.0f64..1.0, k in 1i64..12) {
            let c = cfg(lambda, frac * lambda);
            prop_assert_eq!(oscillator_eigenvalue(&c, 0, ch(-k)).unwrap(), 0.0);
        }

        #[test]
        fn safe_configs_never_invert(lambda in -3.0f64..3.0, frac in -1.0f64..1.0, n in 0u32..4) {
            prop_assume!(lambda != 0.0);
            let c = ModelConfig::new(1.0, 2.0, lambda, frac * lambda.abs()).unwrap();
            prop_assert!(unphysical_ordering_scan(&c, n, 15).is_empty());
        }
    }
}
