//! Numerical laboratory for the dispersive decay of higher-order KdV-type
//! equations
//!
//! ```text
//! u_t + (−1)^{(n+1)/2} ∂ₓⁿ u = ± u^{p−1} ∂ₓ u,      n ≥ 3 odd, p ≥ 2,
//! ```
//!
//! simulated pseudo-spectrally on a periodic grid that emulates the line.

pub mod error;
pub mod evolution;
pub mod fit;
pub mod harness;
pub mod oscillatory;
pub mod params;
pub mod profile;
pub mod resonance;
pub mod spectral;

pub use error::{Error, Result};
pub use params::{EquationParams, NonlinearSign};
pub use spectral::{Grid1D, Profile, SpectralField};
