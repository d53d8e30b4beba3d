//! Constants of the principal terms
//!
//! ```text
//! ∂ₜf̂ ≈ t^{−(p−1)/2} ξ|ξ|^{−(p−1)(n−2)/2} Σⱼ cⱼ e^{−idⱼtξⁿ} f̂(−ξ/kⱼ)^{j+1} f̂(ξ/kⱼ)^{p−j−1} 1_{|ξ|>t^{−1/n}},
//! ```
//!
//! `kⱼ = p − 2j − 2`, obtained by stationary phase in the `p − 1` free
//! frequencies of `±(iξ/p)(2π)^{1−p} ∫ e^{−itH} f̂(ξ₁)⋯f̂(ξ_p)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::params::NonlinearSign;
use crate::resonance::{self, PhaseH};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub j: u32,
    /// `kⱼ = p − 2j − 2`.
    pub divisor: i64,
    pub multiplicity: u64,
    pub d: f64,
    pub resonant: bool,
    /// `|det Hess H|` at `|ξ| = 1`.
    pub determinant: f64,
    /// Signature of `Hess H` at `ξ = +1` (the stationary-phase unit uses `−H`).
    pub signature: i32,
    /// `cⱼ` for `ξ > 0`.
    pub c_plus: Complex64,
    /// `cⱼ` for `ξ < 0`; always `−conj(c_plus)`.
    pub c_minus: Complex64,
}

impl Coefficient {
    pub fn for_sign_of(&self, xi: f64) -> Complex64 {
        if xi >= 0.0 {
            self.c_plus
        } else {
            self.c_minus
        }
    }
}

fn unit(n: u32, p: u32, j: u32, xi: f64) -> Result<(f64, i32)> {
    let phase = PhaseH::with_orders(n, p, xi);
    let point = resonance::stationary_point(p, j, xi)?;
    let hess = resonance::hessian_at(&phase, &point.coordinates)?;
    Ok((hess.determinant().abs(), resonance::signature(&hess)?))
}

/// `cⱼ, dⱼ` for every admissible `j`; `dⱼ` is the resonance module's value.
pub fn compute_coefficients(n: u32, p: u32, sign: NonlinearSign) -> Result<Vec<Coefficient>> {
    let pf = p as f64;
    resonance::admissible_indices(p)
        .into_iter()
        .map(|j| {
            let (det, s_plus) = unit(n, p, j, 1.0)?;
            let (_, s_minus) = unit(n, p, j, -1.0)?;
            let multiplicity = resonance::binomial(p as u64 - 1, j as u64);
            let magnitude = sign.value() / pf * (2.0 * PI).powf((1.0 - pf) / 2.0) * multiplicity as f64 / det.sqrt();
            // e^{−itH}: the phase is −H, whose signature is −s.
            let c = |s: i32| Complex64::i() * Complex64::from_polar(magnitude, -PI * s as f64 / 4.0);
            Ok(Coefficient {
                j,
                divisor: p as i64 - 2 * j as i64 - 2,
                multiplicity,
                d: resonance::phase_coefficient(n, p, j)?,
                resonant: resonance::is_time_resonant(p, j),
                determinant: det,
                signature: s_plus,
                c_plus: c(s_plus),
                c_minus: c(s_minus),
            })
        })
        .collect()
}

/// Real `c` of the resonant term `ic t^{−(p−1)/2} ξ|ξ|^{…} |f̂|^{p−1} f̂`; zero for even `p`.
pub fn gauge_constant(coefficients: &[Coefficient]) -> f64 {
    coefficients
        .iter()
        .filter(|c| c.resonant)
        .map(|c| c.c_plus.im)
        .sum()
}
