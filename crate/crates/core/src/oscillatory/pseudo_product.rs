//! Discrete check of the pseudo-product bound
//! `|∫ m(η) Π_{j≤d} f̂ⱼ(ηⱼ) f̂_{d+1}(−Σηⱼ) dη| ≤ A Π ‖fⱼ‖_{L^{pⱼ}}`,
//! `A = ‖∫ m(η) e^{ix·η} dη‖_{L¹}`.
//!
//! Everything lives on the periodic grid: frequencies add modulo the grid, the
//! kernel is the `d`-dimensional inverse DFT of `m`, and norms are Riemann sums.
//! In that setting the inequality holds with constant exactly 1 (Hölder plus
//! translation invariance), so the measured ratio must not exceed 1.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{transform, Grid1D};

/// Largest ratio tolerated (roundoff above the exact constant 1).
pub const C_LEMMA: f64 = 1.0 + 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoProductReport {
    pub d: usize,
    pub lhs: f64,
    /// `A`, the `L¹` norm of the kernel.
    pub kernel_l1: f64,
    pub norm_product: f64,
    pub ratio: f64,
    pub exponents: Vec<f64>,
}

/// Symbol values `m(ξ_{m₁}, …, ξ_{m_d})` on the `d`-fold frequency grid, stored
/// row-major in FFT slot order (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    pub d: usize,
    pub values: Vec<Complex64>,
}

impl Symbol {
    pub fn from_fn(grid: &Grid1D, d: usize, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let n = grid.count();
        let freqs = grid.frequencies();
        let total = n.pow(d as u32);
        let mut eta = vec![0.0; d];
        let values = (0..total)
            .map(|flat| {
                let mut rest = flat;
                for a in (0..d).rev() {
                    eta[a] = freqs[rest % n];
                    rest /= n;
                }
                f(&eta)
            })
            .collect();
        Self { d, values }
    }
}

fn lp_norm(grid: &Grid1D, f: &[Complex64], p: f64) -> f64 {
    if p.is_infinite() {
        return f.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    (grid.dx() * f.iter().map(|v| v.norm().powf(p)).sum::<f64>()).powf(1.0 / p)
}

/// `Σ_η m(η) e^{iη·y}` on the grid `y ∈ (Δx ℤ_N)^d`, via separable inverse FFTs.
fn kernel(grid: &Grid1D, symbol: &Symbol) -> Vec<Complex64> {
    let n = grid.count();
    let mut data = symbol.values.clone();
    let fft = FftPlanner::new().plan_fft_inverse(n);
    let d = symbol.d;
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..d {
        let stride = n.pow((d - 1 - axis) as u32);
        let total = data.len();
        for start in 0..total {
            // first index of each line along `axis`
            if (start / stride) % n != 0 {
                continue;
            }
            for (k, v) in line.iter_mut().enumerate() {
                *v = data[start + k * stride];
            }
            fft.process(&mut line);
            for (k, v) in line.iter().enumerate() {
                data[start + k * stride] = *v;
            }
        }
    }
    data
}

pub fn pseudo_product_check(
    grid: &Grid1D,
    symbol: &Symbol,
    functions: &[Vec<Complex64>],
    exponents: &[f64],
) -> Result<PseudoProductReport> {
    let d = symbol.d;
    let n = grid.count();
    if d == 0 || symbol.values.len() != n.pow(d as u32) {
        return Err(Error::Dimension {
            expected: n.pow(d.max(1) as u32),
            got: symbol.values.len(),
        });
    }
    if functions.len() != d + 1 || exponents.len() != d + 1 {
        return Err(Error::Dimension {
            expected: d + 1,
            got: functions.len().min(exponents.len()),
        });
    }
    if functions.iter().any(|f| f.len() != n) {
        return Err(Error::Dimension { expected: n, got: 0 });
    }
    let inv_sum: f64 = exponents.iter().map(|p| 1.0 / p).sum();
    if exponents.iter().any(|&p| !(p >= 1.0)) || (inv_sum - 1.0).abs() > 1e-12 {
        return Err(Error::ExponentCondition(format!("Σ 1/p = {inv_sum}, each p must be ≥ 1")));
    }

    let hats: Vec<Vec<Complex64>> = functions.iter().map(|f| transform::forward(grid, f)).collect();
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut slots = vec![0usize; d];
    for (flat, m) in symbol.values.iter().enumerate() {
        let mut rest = flat;
        for a in (0..d).rev() {
            slots[a] = rest % n;
            rest /= n;
        }
        let mut term = *m;
        let mut sum_slot = 0usize;
        for (a, &s) in slots.iter().enumerate() {
            term *= hats[a][s];
            sum_slot = (sum_slot + s) % n;
        }
        let neg = (n - sum_slot) % n;
        lhs += term * hats[d][neg];
    }
    let lhs = (lhs * grid.dxi().powi(d as i32)).norm();

    let k = kernel(grid, symbol);
    let kernel_l1 = (2.0 * PI / n as f64).powi(d as i32) * k.iter().map(|v| v.norm()).sum::<f64>();
    let norm_product: f64 = functions
        .iter()
        .zip(exponents)
        .map(|(f, &p)| lp_norm(grid, f, p))
        .product();
    let denom = kernel_l1 * norm_product;
    let ratio = if lhs == 0.0 { 0.0 } else { lhs / denom };
    Ok(PseudoProductReport {
        d,
        lhs,
        kernel_l1,
        norm_product,
        ratio,
        exponents: exponents.to_vec(),
    })
}
