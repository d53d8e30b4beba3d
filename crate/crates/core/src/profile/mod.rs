//! The interaction picture: `∂ₜf̂`, its principal stationary-phase terms, the
//! phase correction `B`, residual accounting, and Littlewood–Paley diagnostics.

pub mod coefficients;
pub mod duhamel;
pub mod gauge;
pub mod littlewood_paley;
pub mod principal;
pub mod residual;

pub use coefficients::{compute_coefficients, gauge_constant, Coefficient};
pub use duhamel::duhamel_rhs;
pub use gauge::{max_sample_spacing, GaugeHistory};
pub use littlewood_paley::{dyadic_range, freqloc_report, lp_low, lp_piece, FreqlocReport, FreqlocRow};
pub use principal::{principal_rhs, PrincipalTerms};
pub use residual::{residual, ResidualReport, ResidualTracker};
