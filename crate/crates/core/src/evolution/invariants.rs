use serde::{Deserialize, Serialize};

use crate::params::EquationParams;
use crate::spectral::SpectralField;

/// `M = ∫ u² dx`.
pub fn mass(u: &SpectralField) -> f64 {
    let dx = u.grid().dx();
    u.physical().iter().map(|v| v.re * v.re).sum::<f64>() * dx
}

/// `∫ (∂ₓᵏu)² dx` with `k = (n−1)/2`, evaluated on the spectrum.
pub fn dispersive_energy(u: &SpectralField, n: u32) -> f64 {
    let g = u.grid();
    let k = ((n - 1) / 2) as i32;
    let sum: f64 = u
        .fourier()
        .iter()
        .zip(g.frequencies())
        .map(|(v, xi)| xi.powi(2 * k) * v.norm_sqr())
        .sum();
    // Parseval: ∫|g|² dx = (1/2π)∫|ĝ|² dξ, and Δξ/2π = 1/L
    sum / g.length()
}

/// `∫ u^{p+1} dx`.
pub fn potential(u: &SpectralField, p: u32) -> f64 {
    let dx = u.grid().dx();
    u.physical().iter().map(|v| v.re.powi(p as i32 + 1)).sum::<f64>() * dx
}

/// Coefficient `c` in `H = ∫ (∂ₓᵏu)²/2 ± c·u^{p+1}` making `H` a constant of
/// motion for `±u^{p−1}u_x`: the variational derivative of the potential must be
/// `±uᵖ/p`, hence `c = 1/(p(p+1))`.
pub fn potential_coefficient(p: u32) -> f64 {
    1.0 / (p as f64 * (p as f64 + 1.0))
}

pub fn hamiltonian(u: &SpectralField, params: &EquationParams) -> f64 {
    hamiltonian_with_coefficient(u, params, potential_coefficient(params.p()))
}

/// Hamiltonian-type functional with an arbitrary potential coefficient (for
/// comparing normalizations).
pub fn hamiltonian_with_coefficient(u: &SpectralField, params: &EquationParams, c: f64) -> f64 {
    0.5 * dispersive_energy(u, params.n()) + params.sign().value() * c * potential(u, params.p())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantSample {
    pub t: f64,
    pub mass: f64,
    pub hamiltonian: f64,
}

/// Time series of the conserved quantities.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct InvariantLedger {
    pub samples: Vec<InvariantSample>,
}

impl InvariantLedger {
    pub fn record(&mut self, t: f64, u: &SpectralField, params: &EquationParams) {
        self.samples.push(InvariantSample {
            t,
            mass: mass(u),
            hamiltonian: hamiltonian(u, params),
        });
    }

    /// `max_t |M(t) − M(t₀)| / |M(t₀)|` (absolute drift if `M(t₀) = 0`).
    pub fn mass_drift(&self) -> f64 {
        Self::drift(self.samples.iter().map(|s| s.mass))
    }

    pub fn hamiltonian_drift(&self) -> f64 {
        Self::drift(self.samples.iter().map(|s| s.hamiltonian))
    }

    fn drift(mut values: impl Iterator<Item = f64>) -> f64 {
        let Some(first) = values.next() else {
            return 0.0;
        };
        let scale = if first == 0.0 { 1.0 } else { first.abs() };
        values.map(|v| (v - first).abs() / scale).fold(0.0, f64::max)
    }
}
