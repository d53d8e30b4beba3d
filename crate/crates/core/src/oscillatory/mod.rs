//! Oscillatory integrals `∫ e^{iλψ} F χ`: stationary-phase leading terms,
//! a composite Gauss–Legendre oracle, remainder-order probes, and a discrete
//! pseudo-product bound check.

pub mod integral;
pub mod pseudo_product;
pub mod spec;

pub use integral::{
    error_order_probe, lambda_max, oscillatory_quadrature, stationary_phase_leading, Method, OrderProbe,
    OscIntegralResult, ProbeKind,
};
pub use pseudo_product::{pseudo_product_check, PseudoProductReport, Symbol, C_LEMMA};
pub use spec::{Amplitude, Cutoff, Phase, PhaseSpec, CUTOFF_RADIUS};
