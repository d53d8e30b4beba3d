use num_complex::Complex64;

use super::coefficients::{compute_coefficients, Coefficient};
use crate::error::Result;
use crate::evolution::stepper::dealias_mask;
use crate::params::{EquationParams, NonlinearSign};
use crate::spectral::{transform, SpectralField};

/// Coefficients of the principal terms for one `(n, p, ±)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalTerms {
    pub n: u32,
    pub p: u32,
    pub coefficients: Vec<Coefficient>,
}

impl PrincipalTerms {
    pub fn new(params: &EquationParams) -> Result<Self> {
        Self::for_orders(params.n(), params.p(), params.sign())
    }

    pub fn for_orders(n: u32, p: u32, sign: NonlinearSign) -> Result<Self> {
        Ok(Self {
            n,
            p,
            coefficients: compute_coefficients(n, p, sign)?,
        })
    }

    /// `t^{−(p−1)/2} ξ|ξ|^{−(p−1)(n−2)/2} 1_{|ξ|>t^{−1/n}}` (0 at `ξ = 0`).
    pub fn envelope(&self, t: f64, xi: f64) -> f64 {
        let (n, p) = (self.n as f64, self.p as f64);
        if xi.abs() <= t.powf(-1.0 / n) {
            return 0.0;
        }
        t.powf(-(p - 1.0) / 2.0) * xi * xi.abs().powf(-(p - 1.0) * (n - 2.0) / 2.0)
    }

    /// One family's term over the grid, slot order, restricted to the dealiased band.
    pub fn family_term(&self, coefficient: &Coefficient, f: &SpectralField, t: f64) -> Vec<Complex64> {
        let grid = *f.grid();
        let phys = f.physical();
        let k = coefficient.divisor;
        let minus = transform::fourier_at_fraction(&grid, &phys, -k);
        let plus = transform::fourier_at_fraction(&grid, &phys, k);
        let (a, b) = (coefficient.j + 1, self.p - coefficient.j - 1);
        let n = self.n as i32;
        dealias_mask(&grid)
            .iter()
            .enumerate()
            .map(|(slot, &keep)| {
                let xi = grid.frequency(slot);
                let env = self.envelope(t, xi);
                if !keep || env == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let rot = Complex64::from_polar(1.0, -coefficient.d * t * xi.powi(n));
                coefficient.for_sign_of(xi) * env * rot * minus[slot].powu(a) * plus[slot].powu(b)
            })
            .collect()
    }

    /// Sum of all families: the principal part of `∂ₜf̂` for the profile `f` at time `t`.
    pub fn rhs(&self, f: &SpectralField, t: f64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); f.grid().count()];
        for c in &self.coefficients {
            for (o, v) in out.iter_mut().zip(self.family_term(c, f, t)) {
                *o += v;
            }
        }
        out
    }

    /// Only the time-resonant families (`dⱼ = 0`).
    pub fn resonant_rhs(&self, f: &SpectralField, t: f64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); f.grid().count()];
        for c in self.coefficients.iter().filter(|c| c.resonant) {
            for (o, v) in out.iter_mut().zip(self.family_term(c, f, t)) {
                *o += v;
            }
        }
        out
    }
}

/// Principal part of `∂ₜf̂` for the profile `f` at time `t`.
pub fn principal_rhs(params: &EquationParams, f: &SpectralField, t: f64) -> Result<Vec<Complex64>> {
    Ok(PrincipalTerms::new(params)?.rhs(f, t))
}
