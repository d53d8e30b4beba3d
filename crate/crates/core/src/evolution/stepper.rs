//! Integrating-factor RK4 for `û_t = iξⁿ û ± (iξ/p) F[uᵖ]`.
//!
//! The linear part is integrated exactly through `E = e^{ihξⁿ}`; RK4 acts on
//! the interaction-picture variable, written in the usual Lawson form
//!
//! ```text
//! k1 = N(ûₙ)
//! k2 = N(E½ (ûₙ + h/2 k1))
//! k3 = N(E½ ûₙ + h/2 k2)
//! k4 = N(E ûₙ + h E½ k3)
//! ûₙ₊₁ = E ûₙ + h/6 (E k1 + 2 E½ (k2 + k3) + k4)
//! ```
//!
//! The nonlinear term is dealiased with the 2/3 rule.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::spectral::{transform, Grid1D};

/// Courant number for the nonlinear transport `dt ≤ C·Δx / max|u|^{p−1}`.
pub const CFL_NUMBER: f64 = 0.5;

type C = Complex64;

#[derive(Debug, Clone)]
pub struct IfRk4 {
    grid: Grid1D,
    p: u32,
    dispersion: Vec<f64>,
    coefficient: Vec<C>,
    mask: Vec<bool>,
    cached_h: f64,
    full: Vec<C>,
    half: Vec<C>,
    // scratch
    k1: Vec<C>,
    k2: Vec<C>,
    k3: Vec<C>,
    k4: Vec<C>,
    stage: Vec<C>,
    work: Vec<C>,
    /// When false the nonlinearity is switched off (pure linear flow).
    nonlinear: bool,
}

/// 2/3-rule mask: keeps modes with `|m| < N/3`.
pub fn dealias_mask(grid: &Grid1D) -> Vec<bool> {
    let cutoff = grid.count() as i64 / 3;
    (0..grid.count())
        .map(|s| grid.signed_index(s).abs() < cutoff)
        .collect()
}

impl IfRk4 {
    pub fn new(params: &EquationParams, grid: Grid1D) -> Self {
        let n = params.n() as i32;
        let p = params.p();
        let sign = params.sign().value();
        let freqs = grid.frequencies();
        let mask = dealias_mask(&grid);
        let dispersion = freqs.iter().map(|xi| xi.powi(n)).collect();
        let coefficient = freqs
            .iter()
            .zip(&mask)
            .map(|(&xi, &keep)| {
                if keep {
                    C::new(0.0, sign * xi / p as f64)
                } else {
                    C::new(0.0, 0.0)
                }
            })
            .collect();
        let zeros = vec![C::new(0.0, 0.0); grid.count()];
        Self {
            grid,
            p,
            dispersion,
            coefficient,
            mask,
            cached_h: f64::NAN,
            full: zeros.clone(),
            half: zeros.clone(),
            k1: zeros.clone(),
            k2: zeros.clone(),
            k3: zeros.clone(),
            k4: zeros.clone(),
            stage: zeros.clone(),
            work: zeros,
            nonlinear: true,
        }
    }

    /// Disables the nonlinear term; the scheme then reduces to the exact propagator.
    pub fn linear_only(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    pub fn is_nonlinear(&self) -> bool {
        self.nonlinear
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Zeroes every mode outside the 2/3 band.
    pub fn dealias(&self, uhat: &mut [C]) {
        for (v, &keep) in uhat.iter_mut().zip(&self.mask) {
            if !keep {
                *v = C::new(0.0, 0.0);
            }
        }
    }

    fn prepare(&mut self, h: f64) {
        if self.cached_h == h {
            return;
        }
        for (i, &w) in self.dispersion.iter().enumerate() {
            self.full[i] = C::from_polar(1.0, h * w);
            self.half[i] = C::from_polar(1.0, 0.5 * h * w);
        }
        self.cached_h = h;
    }

    /// Writes `±(iξ/p) F[uᵖ]` into `out`, returning `max |u|`.
    fn eval(grid: &Grid1D, p: u32, coefficient: &[C], work: &mut [C], uhat: &[C], out: &mut [C]) -> f64 {
        work.copy_from_slice(uhat);
        transform::inverse_in_place(grid, work);
        let mut umax = 0.0f64;
        for v in work.iter_mut() {
            umax = umax.max(v.norm());
            *v = v.powu(p);
        }
        transform::forward_in_place(grid, work);
        for ((o, w), c) in out.iter_mut().zip(work.iter()).zip(coefficient) {
            *o = w * c;
        }
        umax
    }

    /// Largest stable step for the current state under the nonlinear CFL rule.
    pub fn cfl_limit(&self, umax: f64) -> f64 {
        if !self.nonlinear || umax == 0.0 {
            return f64::INFINITY;
        }
        CFL_NUMBER * self.grid.dx() / umax.powi(self.p as i32 - 1)
    }

    /// Advances `uhat` (Fourier coefficients of `u`) by `h`.
    pub fn step(&mut self, uhat: &mut [C], h: f64) -> Result<()> {
        self.prepare(h);
        if !self.nonlinear {
            for (v, e) in uhat.iter_mut().zip(&self.full) {
                *v *= e;
            }
            return Ok(());
        }
        let (grid, p) = (self.grid, self.p);
        let umax = Self::eval(&grid, p, &self.coefficient, &mut self.work, uhat, &mut self.k1);
        let limit = self.cfl_limit(umax);
        if h > limit {
            return Err(Error::Cfl { dt: h, limit });
        }
        let hh = 0.5 * h;
        for i in 0..uhat.len() {
            self.stage[i] = self.half[i] * (uhat[i] + hh * self.k1[i]);
        }
        Self::eval(&grid, p, &self.coefficient, &mut self.work, &self.stage, &mut self.k2);
        for i in 0..uhat.len() {
            self.stage[i] = self.half[i] * uhat[i] + hh * self.k2[i];
        }
        Self::eval(&grid, p, &self.coefficient, &mut self.work, &self.stage, &mut self.k3);
        for i in 0..uhat.len() {
            self.stage[i] = self.full[i] * uhat[i] + h * self.half[i] * self.k3[i];
        }
        Self::eval(&grid, p, &self.coefficient, &mut self.work, &self.stage, &mut self.k4);
        let sixth = h / 6.0;
        for i in 0..uhat.len() {
            uhat[i] = self.full[i] * uhat[i]
                + sixth
                    * (self.full[i] * self.k1[i]
                        + 2.0 * self.half[i] * (self.k2[i] + self.k3[i])
                        + self.k4[i]);
        }
        Ok(())
    }

    /// `±(iξ/p) F[uᵖ]` for the given coefficients (not dealiased beyond the mask
    /// already built into the coefficient).
    pub fn nonlinear_term(&mut self, uhat: &[C]) -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); uhat.len()];
        let grid = self.grid;
        Self::eval(&grid, self.p, &self.coefficient, &mut self.work, uhat, &mut out);
        out
    }
}
