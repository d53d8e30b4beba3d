//! Stationary points of the `p`-linear phase, their phase values and Hessians,
//! and the resulting space-time resonance classification.
//!
//! The resonance index `j` here is unrelated to dyadic frequency indices used
//! by the Littlewood–Paley tools in [`crate::profile`].

pub mod hessian;
pub mod phase;
pub mod report;

pub use hessian::{
    closed_form_hessian, eigenvalues, hessian_at, m1_pattern, m1_spectrum_check, m2_pattern, signature,
    SpectrumCheck, SINGULAR_THRESHOLD,
};
pub use phase::{
    admissible_indices, binomial, is_time_resonant, phase_at, phase_coefficient, resonant_indices, stationary_point,
    stationary_points, PhaseH, StationaryPoint,
};
pub use report::{classify, classify_orders, ResonanceEntry, ResonanceReport};
