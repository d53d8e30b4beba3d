//! Fourier multipliers and the profile maps `f = S(−t) u`.

use num_complex::Complex64;

use super::field::SpectralField;
use crate::error::{Error, Result};

/// Fourier symbol of the linear propagator `S(t)`: `e^{itξⁿ}`.
///
/// With this symbol `u = S(t) u₀` solves `u_t + (−1)^{(n+1)/2} ∂ₓⁿ u = 0`.
#[inline]
pub fn propagator_symbol(n: u32, t: f64, xi: f64) -> Complex64 {
    Complex64::from_polar(1.0, t * xi.powi(n as i32))
}

/// `S(t) u` for the order-`n` dispersion.
pub fn apply_propagator(field: &SpectralField, n: u32, t: f64) -> SpectralField {
    if t == 0.0 {
        return field.clone();
    }
    field.apply_symbol(|_, xi| propagator_symbol(n, t, xi))
}

/// `D^β = |∂ₓ|^β`, symbol `|ξ|^β`; `β = 0` is the identity (including the zero mode).
pub fn fractional_derivative(field: &SpectralField, beta: f64) -> Result<SpectralField> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "derivative order must be finite and non-negative, got {beta}"
        )));
    }
    if beta == 0.0 {
        return Ok(field.clone());
    }
    Ok(field.apply_symbol(|_, xi| Complex64::new(xi.abs().powf(beta), 0.0)))
}

/// `∂ₓ^k`, symbol `(iξ)^k`. For odd `k` the unpaired Nyquist mode is zeroed so
/// real fields stay real.
pub fn derivative(field: &SpectralField, k: u32) -> SpectralField {
    if k == 0 {
        return field.clone();
    }
    let nyq = field.grid().nyquist_slot();
    let ik = Complex64::i().powu(k);
    field.apply_symbol(|slot, xi| {
        if k % 2 == 1 && slot == nyq {
            Complex64::new(0.0, 0.0)
        } else {
            ik * xi.powi(k as i32)
        }
    })
}

/// Hilbert transform, symbol `−i sign(ξ)`, zero at `ξ = 0` and on the Nyquist mode.
pub fn hilbert_transform(field: &SpectralField) -> SpectralField {
    let nyq = field.grid().nyquist_slot();
    field.apply_symbol(|slot, xi| {
        if slot == nyq || xi == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, -xi.signum())
        }
    })
}

/// Interaction-picture unknown `f(t) = S(−t) u(t)` at a given time.
#[derive(Debug, Clone)]
pub struct Profile {
    pub n: u32,
    pub t: f64,
    pub f: SpectralField,
}

impl Profile {
    /// `f̂(ξ)` in FFT slot order.
    pub fn fourier(&self) -> std::borrow::Cow<'_, [Complex64]> {
        self.f.fourier()
    }
}

pub fn to_profile(u: &SpectralField, n: u32, t: f64) -> Profile {
    Profile {
        n,
        t,
        f: apply_propagator(u, n, -t),
    }
}

pub fn from_profile(profile: &Profile) -> SpectralField {
    apply_propagator(&profile.f, profile.n, profile.t)
}
