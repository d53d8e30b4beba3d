use num_complex::Complex64;

use crate::evolution::IfRk4;
use crate::params::EquationParams;
use crate::spectral::{propagator_symbol, SpectralField};

/// `∂ₜf̂(t, ξ) = e^{−itξⁿ} F[±u^{p−1}∂ₓu](ξ)`, evaluated in physical space and
/// restricted to the dealiased band the solver evolves. Slot order.
pub fn duhamel_rhs(params: &EquationParams, u: &SpectralField, t: f64) -> Vec<Complex64> {
    let grid = *u.grid();
    let mut stepper = IfRk4::new(params, grid);
    let mut out = stepper.nonlinear_term(&u.fourier());
    let n = params.n();
    for (slot, v) in out.iter_mut().enumerate() {
        *v *= propagator_symbol(n, -t, grid.frequency(slot));
    }
    out
}
