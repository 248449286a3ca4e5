//! Exactly solvable relativistic oscillator for a bound spin-1/2 fermion and
//! spin-0 boson interacting through Lorentz-vector (`lambda`) and
//! Lorentz-tensor (`nu`) oscillator potentials.
//!
//! - [`qnum`]: `kappa <-> (l, j)` algebra, labels, coupling validation
//! - [`spectrum`]: closed-form energies, degeneracy and ordering analysis
//! - [`wavefn`]: radial wavefunctions, normalization, residual checks
//! - [`oracle`]: finite-difference eigenvalues used to cross-check the spectrum
//! - [`quadrature`]: composite Gauss-Legendre integration

pub mod error;
pub mod oracle;
pub mod qnum;
pub mod quadrature;
pub mod spectrum;
pub mod wavefn;

pub use error::{Error, Result};
pub use qnum::{Channel, CouplingVerdict, HalfInt, ModelConfig, Parity};
pub use spectrum::{DegeneracyGroup, GroupKind, Level, Spectrum};
pub use wavefn::{RadialGrid, RadialSolution, RadialWaveFunction};
