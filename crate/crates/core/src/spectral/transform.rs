//! Discrete realisation of the analyst's Fourier convention
//!
//! ```text
//! û(ξ) = ∫ u(x) e^{-ixξ} dx,        u(x) = (1/2π) ∫ û(ξ) e^{ixξ} dξ
//! ```
//!
//! with Riemann weights `Δx` and `Δξ = 2π/L`. Because the nodes start at
//! `-L/2`, `e^{-i x_k ξ_m} = (-1)^m e^{-2πi km/N}`, so both directions are a
//! plain FFT plus a sign flip on odd modes and a scalar weight.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::Grid1D;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if forward {
            p.plan_fft_forward(len)
        } else {
            p.plan_fft_inverse(len)
        }
    })
}

/// Raw unnormalised forward FFT of arbitrary length.
pub(crate) fn fft_forward_raw(data: &mut [Complex64]) {
    plan(data.len(), true).process(data);
}

/// Raw unnormalised inverse FFT of arbitrary length.
pub(crate) fn fft_inverse_raw(data: &mut [Complex64]) {
    plan(data.len(), false).process(data);
}

/// Physical samples → Fourier coefficients, in place.
pub fn forward_in_place(grid: &Grid1D, data: &mut [Complex64]) {
    debug_assert_eq!(data.len(), grid.count());
    fft_forward_raw(data);
    let dx = grid.dx();
    for (slot, v) in data.iter_mut().enumerate() {
        let w = if slot % 2 == 0 { dx } else { -dx };
        *v *= w;
    }
}

/// Fourier coefficients → physical samples, in place.
pub fn inverse_in_place(grid: &Grid1D, data: &mut [Complex64]) {
    debug_assert_eq!(data.len(), grid.count());
    let inv_l = 1.0 / grid.length();
    for (slot, v) in data.iter_mut().enumerate() {
        let w = if slot % 2 == 0 { inv_l } else { -inv_l };
        *v *= w;
    }
    fft_inverse_raw(data);
}

pub fn forward(grid: &Grid1D, data: &[Complex64]) -> Vec<Complex64> {
    let mut out = data.to_vec();
    forward_in_place(grid, &mut out);
    out
}

pub fn inverse(grid: &Grid1D, data: &[Complex64]) -> Vec<Complex64> {
    let mut out = data.to_vec();
    inverse_in_place(grid, &mut out);
    out
}

/// Evaluates `û(ξ_m / k)` for every grid frequency `ξ_m`, given physical
/// samples supported on the grid, by zero padding to length `|k| N`.
///
/// This is exact for the discrete transform: the padded DFT samples the same
/// trigonometric sum on a `|k|`-times finer frequency lattice.
pub fn fourier_at_fraction(grid: &Grid1D, physical: &[Complex64], k: i64) -> Vec<Complex64> {
    assert!(k != 0, "fraction denominator must be non-zero");
    let n = grid.count();
    let ka = k.unsigned_abs() as usize;
    let big = ka * n;
    let mut buf = vec![Complex64::new(0.0, 0.0); big];
    buf[..n].copy_from_slice(physical);
    fft_forward_raw(&mut buf);
    let dx = grid.dx();
    (0..n)
        .map(|slot| {
            // ξ_m / k = 2π (m/k) / L, i.e. padded index m·sign(k) on the fine lattice of spacing 2π/(|k|L).
            let m = grid.signed_index(slot) * k.signum();
            let idx = m.rem_euclid(big as i64) as usize;
            // e^{-i x_0 ξ} with x_0 = -L/2 and ξ = 2π m / (|k| L) gives e^{iπ m/|k|}.
            let phase = std::f64::consts::PI * m as f64 / ka as f64;
            buf[idx] * Complex64::from_polar(dx, phase)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_maps_to_delta() {
        let g = Grid1D::new(2.0 * PI, 64).unwrap();
        let data = vec![Complex64::new(1.0, 0.0); 64];
        let hat = forward(&g, &data);
        assert!((hat[0] - Complex64::new(2.0 * PI, 0.0)).norm() < 1e-12);
        for v in &hat[1..] {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn single_mode() {
        let g = Grid1D::new(2.0 * PI, 64).unwrap();
        let data: Vec<_> = g.nodes().iter().map(|&x| Complex64::from_polar(1.0, x)).collect();
        let hat = forward(&g, &data);
        let s1 = g.slot(1);
        assert!((hat[s1] - Complex64::new(2.0 * PI, 0.0)).norm() < 1e-12);
        for (s, v) in hat.iter().enumerate() {
            if s != s1 {
                assert!(v.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn fraction_matches_direct_sum() {
        let g = Grid1D::new(20.0, 64).unwrap();
        let data: Vec<_> = g
            .nodes()
            .iter()
            .map(|&x| Complex64::new((-(x - 1.0) * (x - 1.0)).exp(), 0.3 * (-x * x).exp()))
            .collect();
        for k in [-3i64, -1, 1, 2, 5] {
            let got = fourier_at_fraction(&g, &data, k);
            for slot in [0usize, 1, 7, 40, 63] {
                let xi = g.frequency(slot) / k as f64;
                let direct: Complex64 = g
                    .nodes()
                    .iter()
                    .zip(&data)
                    .map(|(&x, &u)| u * Complex64::from_polar(g.dx(), -x * xi))
                    .sum();
                assert!((got[slot] - direct).norm() < 1e-12, "k={k} slot={slot}");
            }
        }
    }
}
