use std::f64::consts::PI;

use super::field::SpectralField;
use crate::error::{Error, Result};

/// Fraction of the domain length, on each side, treated as the wrap-around zone.
pub const BOUNDARY_ZONE: f64 = 0.05;
/// Largest tolerated share of `‖u‖²_{L²}` inside the wrap-around zone.
pub const BOUNDARY_MASS_LIMIT: f64 = 1e-8;

/// Japanese bracket `⟨z⟩ = √(1 + z²)`.
#[inline]
pub fn japanese(z: f64) -> f64 {
    (1.0 + z * z).sqrt()
}

pub fn l2(field: &SpectralField) -> f64 {
    let dx = field.grid().dx();
    (field.physical().iter().map(|v| v.norm_sqr()).sum::<f64>() * dx).sqrt()
}

/// `‖u‖_{H^s}² = (1/2π) ∫ ⟨ξ⟩^{2s} |û|² dξ`.
pub fn sobolev(field: &SpectralField, s: f64) -> f64 {
    let g = field.grid();
    let hat = field.fourier();
    let sum: f64 = hat
        .iter()
        .zip(g.frequencies())
        .map(|(v, xi)| japanese(xi).powf(2.0 * s) * v.norm_sqr())
        .sum();
    (sum * g.dxi() / (2.0 * PI)).sqrt()
}

/// `‖û‖_{L^∞}`.
pub fn linf_fourier(field: &SpectralField) -> f64 {
    field.fourier().iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn linf(field: &SpectralField) -> f64 {
    field.physical().iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `‖u‖_{L^p}` for `1 <= p < ∞`.
pub fn lp(field: &SpectralField, p: f64) -> f64 {
    let dx = field.grid().dx();
    (field.physical().iter().map(|v| v.norm().powf(p)).sum::<f64>() * dx).powf(1.0 / p)
}

pub fn l1(field: &SpectralField) -> f64 {
    lp(field, 1.0)
}

/// Share of `‖u‖²_{L²}` in the outer [`BOUNDARY_ZONE`] of the domain on either side.
pub fn boundary_mass_fraction(field: &SpectralField) -> f64 {
    let g = field.grid();
    let cut = (0.5 - BOUNDARY_ZONE) * g.length();
    let phys = field.physical();
    let mut total = 0.0;
    let mut edge = 0.0;
    for (k, v) in phys.iter().enumerate() {
        let w = v.norm_sqr();
        total += w;
        if g.node(k).abs() > cut {
            edge += w;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        edge / total
    }
}

pub fn check_boundary(field: &SpectralField) -> Result<f64> {
    let fraction = boundary_mass_fraction(field);
    if fraction > BOUNDARY_MASS_LIMIT {
        Err(Error::BoundaryMass {
            fraction,
            limit: BOUNDARY_MASS_LIMIT,
        })
    } else {
        Ok(fraction)
    }
}

/// `‖x u‖_{L²}` with the physical coordinate; only meaningful while the
/// field is negligible near the edges, so the boundary monitor is enforced.
pub fn weighted_x(field: &SpectralField) -> Result<f64> {
    check_boundary(field)?;
    Ok(weighted_x_unchecked(field))
}

pub fn weighted_x_unchecked(field: &SpectralField) -> f64 {
    let g = field.grid();
    let dx = g.dx();
    let sum: f64 = field
        .physical()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let x = g.node(k);
            x * x * v.norm_sqr()
        })
        .sum();
    (sum * dx).sqrt()
}

/// The smallness functional `‖u‖_{H^{(n−1)/2}} + ‖x u‖_{L²}`.
pub fn data_size(field: &SpectralField, n: u32) -> Result<f64> {
    Ok(sobolev(field, (n as f64 - 1.0) / 2.0) + weighted_x(field)?)
}
