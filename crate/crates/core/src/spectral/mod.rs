//! Periodic grids, the Fourier transform contract, multiplier operators and
//! the `u ↔ f` profile maps.

pub mod field;
pub mod grid;
pub mod norms;
pub mod ops;
pub mod transform;
pub mod window;

pub use field::{Authority, SpectralField};
pub use grid::Grid1D;
pub use ops::{
    apply_propagator, derivative, fractional_derivative, from_profile, hilbert_transform,
    propagator_symbol, to_profile, Profile,
};
