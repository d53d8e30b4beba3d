use thiserror::Error;

/// Errors produced by the simulation and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid size {0} is not a power of two >= 8")]
    GridSize(usize),
    #[error("domain length must be positive and finite, got {0}")]
    GridLength(f64),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid equation parameters: {0}")]
    Params(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("boundary mass fraction {fraction:.3e} exceeds {limit:.1e}; the periodic domain no longer emulates the line")]
    BoundaryMass { fraction: f64, limit: f64 },
    #[error("initial data width {width} is not resolved by the grid: {reason}")]
    Unresolved { width: f64, reason: String },
    #[error("time step {dt} exceeds the CFL limit {limit}")]
    Cfl { dt: f64, limit: f64 },
    #[error("non-finite values detected at t = {t}")]
    NonFinite { t: f64 },
    #[error("invalid resonance index j = {j} for p = {p}")]
    ResonanceIndex { j: i64, p: u32 },
    #[error("stationary-point frequency must be non-zero")]
    ZeroFrequency,
    #[error("matrix is near-singular: min |eigenvalue| {min_abs:.3e} <= {threshold:.3e}")]
    NearSingular { min_abs: f64, threshold: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("degenerate Hessian at the stationary point (|det| = {0:.3e})")]
    DegenerateHessian(f64),
    #[error("oscillatory quadrature cost guard: lambda {lambda} exceeds {max} in dimension {dim}")]
    CostGuard { lambda: f64, max: f64, dim: usize },
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("exponent condition violated: {0}")]
    ExponentCondition(String),
    #[error("sampling too coarse: {0}")]
    CoarseSampling(String),
    #[error("empty history for the gauge integral")]
    EmptyHistory,
    #[error("invalid run: {0}")]
    InvalidRun(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
