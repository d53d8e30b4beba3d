use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::spectral::{self, norms, SpectralField};

fn nonlinear_part(u: &SpectralField, params: &EquationParams, t: f64) -> Vec<Complex64> {
    let c = params.sign().value() * params.n() as f64 / params.p() as f64 * t;
    let p = params.p();
    u.physical().iter().map(|v| c * v.powu(p)).collect()
}

fn x_times(field: &SpectralField) -> SpectralField {
    let g = *field.grid();
    let values = field
        .physical()
        .iter()
        .enumerate()
        .map(|(k, v)| g.node(k) * v)
        .collect();
    SpectralField::from_physical(g, values)
}

/// `y = x u + n t (−1)^{(n−1)/2} ∂ₓ^{n−1} u ± (n/p) t uᵖ`, the operator form.
pub fn vector_field_y(u: &SpectralField, params: &EquationParams, t: f64) -> Result<SpectralField> {
    norms::check_boundary(u)?;
    let n = params.n();
    let sign = if (n - 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
    let dn = spectral::derivative(u, n - 1);
    let xu = x_times(u);
    let nl = nonlinear_part(u, params, t);
    let scale = n as f64 * t * sign;
    let values = xu
        .physical()
        .iter()
        .zip(dn.physical().iter())
        .zip(&nl)
        .map(|((a, b), c)| a + scale * b + c)
        .collect();
    Ok(SpectralField::from_physical(*u.grid(), values))
}

/// The same quantity as `S(t)(x f) ± (n/p) t uᵖ` with `f = S(−t)u`.
pub fn vector_field_y_conjugated(u: &SpectralField, params: &EquationParams, t: f64) -> Result<SpectralField> {
    norms::check_boundary(u)?;
    let profile = spectral::to_profile(u, params.n(), t);
    norms::check_boundary(&profile.f)?;
    let lin = spectral::apply_propagator(&x_times(&profile.f), params.n(), t);
    let nl = nonlinear_part(u, params, t);
    let values = lin.physical().iter().zip(&nl).map(|(a, b)| a + b).collect();
    Ok(SpectralField::from_physical(*u.grid(), values))
}

/// Bootstrap norm `‖u‖_{H^{(n−1)/2}} + t^{−1/(2n)}‖x f‖_{L²} + ‖f̂‖_{L^∞}`.
pub fn x_norm(u: &SpectralField, n: u32, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("X-norm needs t > 0, got {t}")));
    }
    let profile = spectral::to_profile(u, n, t);
    let weight = t.powf(-1.0 / (2.0 * n as f64));
    Ok(norms::sobolev(u, (n as f64 - 1.0) / 2.0)
        + weight * norms::weighted_x(&profile.f)?
        + norms::linf_fourier(&profile.f))
}
