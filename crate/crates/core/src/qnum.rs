//! Angular quantum numbers of the relative motion and the coupling-constant
//! validity check.
//!
//! A channel is labelled by the single nonzero integer `kappa`, which fixes
//! both the orbital momentum `l` and the total angular momentum `j`:
//!
//! - `kappa > 0`: `l = kappa`, `j = l - 1/2`
//! - `kappa < 0`: `l = -kappa - 1`, `j = l + 1/2`
//!
//! Half-integers are carried as twice their value so that round-trips are
//! exact.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A positive half-integer stored as twice its value (`3/2` is stored as 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(u32);

impl HalfInt {
    /// Builds from the doubled value; it must be odd.
    pub fn from_twice(twice: u32) -> Result<Self> {
        if twice % 2 == 1 {
            Ok(HalfInt(twice))
        } else {
            Err(Error::InvalidArgument(format!(
                "{twice}/2 is not a half-odd-integer"
            )))
        }
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// Accepts `"7/2"` or a decimal such as `"3.5"`.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse half-integer from {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            let den: u32 = den.trim().parse().map_err(|_| bad())?;
            if den != 2 {
                return Err(bad());
            }
            HalfInt::from_twice(num)
        } else {
            let v: f64 = s.parse().map_err(|_| bad())?;
            let twice = 2.0 * v;
            if !(twice.is_finite() && twice > 0.0 && twice.fract() == 0.0) {
                return Err(bad());
            }
            HalfInt::from_twice(twice as u32)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_l(l: u32) -> Self {
        if l % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "+",
            Parity::Odd => "-",
        })
    }
}

/// Angular sector of the relative motion, indexed by `kappa != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Channel {
    kappa: i64,
}

impl Channel {
    pub fn new(kappa: i64) -> Result<Self> {
        if kappa == 0 {
            Err(Error::ZeroKappa)
        } else {
            Ok(Channel { kappa })
        }
    }

    pub fn kappa(self) -> i64 {
        self.kappa
    }

    pub fn l(self) -> u32 {
        if self.kappa > 0 {
            self.kappa as u32
        } else {
            (-self.kappa - 1) as u32
        }
    }

    pub fn j(self) -> HalfInt {
        HalfInt(2 * self.kappa.unsigned_abs() as u32 - 1)
    }

    pub fn parity(self) -> Parity {
        Parity::of_l(self.l())
    }

    /// The partner with the same `j` and opposite parity (`kappa -> -kappa`).
    pub fn flipped(self) -> Self {
        Channel { kappa: -self.kappa }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kappa={}", self.kappa)
    }
}

/// `kappa = +(j + 1/2)` when `l = j + 1/2`, `-(j + 1/2)` when `l = j - 1/2`.
pub fn kappa_from_lj(l: u32, j: HalfInt) -> Result<Channel> {
    let two_l = 2 * i64::from(l);
    let two_j = i64::from(j.twice());
    let k = (two_j + 1) / 2;
    match two_l - two_j {
        1 => Channel::new(k),
        -1 => Channel::new(-k),
        _ => Err(Error::InvalidAngularMomenta { l, two_j: j.twice() }),
    }
}

pub fn lj_from_kappa(c: Channel) -> (u32, HalfInt, Parity) {
    (c.l(), c.j(), c.parity())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingVerdict {
    OrderingSafe,
    OrderingUnsafe,
}

/// Safe iff `lambda = 0, nu != 0` or `|lambda| >= |nu|, lambda != 0`.
/// Outside that region some `n (l+1)_{j+1}` level drops below `n l_j`.
pub fn validate_couplings(lambda: f64, nu: f64) -> Result<CouplingVerdict> {
    if !(lambda.is_finite() && nu.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "couplings must be finite (lambda = {lambda}, nu = {nu})"
        )));
    }
    if lambda == 0.0 && nu == 0.0 {
        return Err(Error::NoInteraction);
    }
    if lambda == 0.0 || lambda.abs() >= nu.abs() {
        Ok(CouplingVerdict::OrderingSafe)
    } else {
        Ok(CouplingVerdict::OrderingUnsafe)
    }
}

const ORBITAL_LETTERS: [char; 21] = [
    's', 'p', 'd', 'f', 'g', 'h', 'i', 'k', 'l', 'm', 'n', 'o', 'q', 'r', 't', 'u', 'v', 'w',
    'x', 'y', 'z',
];

pub fn orbital_letter(l: u32) -> String {
    match ORBITAL_LETTERS.get(l as usize) {
        Some(c) => c.to_string(),
        None => format!("l={l}"),
    }
}

/// `"n X_j"` without the space, e.g. `0s_1/2`.
pub fn spectroscopic_label(n: u32, c: Channel) -> String {
    format!("{n}{}_{}", orbital_letter(c.l()), c.j())
}

/// The physical model: fermion mass `m1`, boson mass `m2`, Lorentz-vector
/// coupling `lambda` and Lorentz-tensor coupling `nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    pub m1: f64,
    pub m2: f64,
    pub lambda: f64,
    pub nu: f64,
    ordering: CouplingVerdict,
}

impl ModelConfig {
    /// Rejects ordering-unsafe couplings.
    pub fn new(m1: f64, m2: f64, lambda: f64, nu: f64) -> Result<Self> {
        let cfg = Self::forced(m1, m2, lambda, nu)?;
        if cfg.ordering == CouplingVerdict::OrderingUnsafe {
            return Err(Error::OrderingUnsafe { lambda, nu });
        }
        Ok(cfg)
    }

    /// Accepts ordering-unsafe couplings, flagging them.
    pub fn forced(m1: f64, m2: f64, lambda: f64, nu: f64) -> Result<Self> {
        if !(m1 > 0.0 && m2 > 0.0 && m1.is_finite() && m2.is_finite()) {
            return Err(Error::NonPositiveMass { m1, m2 });
        }
        let ordering = validate_couplings(lambda, nu)?;
        Ok(ModelConfig {
            m1,
            m2,
            lambda,
            nu,
            ordering,
        })
    }

    pub fn ordering(&self) -> CouplingVerdict {
        self.ordering
    }

    pub fn is_ordering_safe(&self) -> bool {
        self.ordering == CouplingVerdict::OrderingSafe
    }

    /// `(m1 + m2) / 2`
    pub fn m_plus(&self) -> f64 {
        0.5 * (self.m1 + self.m2)
    }

    /// `(m1 - m2) / 2`
    pub fn m_minus(&self) -> f64 {
        0.5 * (self.m1 - self.m2)
    }

    /// Same model with the masses of the two particles exchanged.
    pub fn swapped_masses(&self) -> Self {
        ModelConfig {
            m1: self.m2,
            m2: self.m1,
            ..*self
        }
    }

    /// Same masses, couplings replaced (re-validated, ordering-unsafe allowed).
    pub fn with_couplings(&self, lambda: f64, nu: f64) -> Result<Self> {
        Self::forced(self.m1, self.m2, lambda, nu)
    }
}
