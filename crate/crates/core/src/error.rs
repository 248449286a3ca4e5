use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("kappa must be nonzero")]
    ZeroKappa,

    #[error("|l - j| must equal 1/2 (got l = {l}, 2j = {two_j})")]
    InvalidAngularMomenta { l: u32, two_j: u32 },

    #[error("masses must be positive (m1 = {m1}, m2 = {m2})")]
    NonPositiveMass { m1: f64, m2: f64 },

    #[error("no interaction: lambda = nu = 0 admits no normalizable bound states")]
    NoInteraction,

    #[error(
        "couplings (lambda = {lambda}, nu = {nu}) violate |lambda| >= |nu| or lambda = 0; \
         pass the ordering-unsafe flag to proceed anyway"
    )]
    OrderingUnsafe { lambda: f64, nu: f64 },

    #[error("degenerate channel kappa = {kappa}: nu - lambda*kappa = 0, oscillator frequency vanishes")]
    DegenerateChannel { kappa: i64 },

    #[error("energy domain error: {0}")]
    Domain(String),

    #[error("singular configuration: (E + m1)^2 - m2^2 = {0}")]
    SingularDenominator(f64),

    #[error("quadrature failed to converge (last relative change {rel_change:e} after {panels} panels)")]
    QuadratureNotConverged { rel_change: f64, panels: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("bisection did not isolate eigenvalue #{index} (bracket [{lo}, {hi}])")]
    BisectionFailed { index: usize, lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
