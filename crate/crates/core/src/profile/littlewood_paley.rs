//! Smooth dyadic partition `ψ(ξ) = φ(ξ) − φ(2ξ)`, with `φ = 1` on `[0, 1.5]` and
//! `φ = 0` on `[2, ∞)`. Hence `supp ψ ⊂ [3/4, 2]`, `ψ = 1` on `[1, 1.5]`, and
//! `Σⱼ ψ(ξ/2ʲ) = 1` for `ξ ≠ 0`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::spectral::{norms, window, Grid1D, SpectralField};

pub fn phi(xi: f64) -> f64 {
    window::plateau(xi, 1.5, 2.0)
}

pub fn psi(xi: f64) -> f64 {
    phi(xi) - phi(2.0 * xi)
}

fn scale(dyad: i32) -> f64 {
    2f64.powi(dyad)
}

/// `f_j`, with `f̂_j = ψ(ξ/2ʲ) f̂`.
pub fn lp_piece(f: &SpectralField, dyad: i32) -> SpectralField {
    let s = scale(dyad);
    f.apply_symbol(|_, xi| Complex64::new(psi(xi / s), 0.0))
}

/// `f_{<j} = Σ_{k<j} f_k`, with symbol `φ(ξ/2^{j−1})`.
pub fn lp_low(f: &SpectralField, dyad: i32) -> SpectralField {
    let s = scale(dyad - 1);
    f.apply_symbol(|_, xi| Complex64::new(phi(xi / s), 0.0))
}

/// Dyads whose pieces can be non-zero on the grid: from the first with
/// `2·2ʲ > Δξ` to the first with `1.5·2ʲ ≥ ξ_max`, where the partition has
/// already summed to 1.
pub fn dyadic_range(grid: &Grid1D) -> (i32, i32) {
    let lo = (grid.dxi() / 2.0).log2().floor() as i32;
    let hi = (grid.max_wavenumber() / 1.5).log2().ceil() as i32;
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreqlocRow {
    pub dyad: i32,
    pub fhat_linf: f64,
    pub xf_l2: f64,
    pub f_l1: f64,
    /// `2^{−j/2} + t^{1/(2n)} min(1, (2ʲt^{1/n})^{−α})`.
    pub xf_envelope: f64,
    /// `1 + (2ʲt^{1/n})^{1/4 − α/2}`.
    pub l1_envelope: f64,
    /// `f_{<j}` in `L¹`, and its envelope `(2ʲt^{1/n})^{1/4−α/2}`, when `2ʲ ≥ t^{−1/n}`.
    pub low_l1: Option<f64>,
    pub low_envelope: Option<f64>,
}

/// Measured frequency-localized norms against their envelopes. The envelopes
/// carry an unknown constant `ε₁`; the fitted prefactors are the largest
/// ratios measured/envelope over the dyads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreqlocReport {
    pub t: f64,
    pub n: u32,
    pub alpha: f64,
    pub rows: Vec<FreqlocRow>,
    pub prefactor_linf: f64,
    pub prefactor_xf: f64,
    pub prefactor_l1: f64,
    pub prefactor_low: f64,
}

pub fn freqloc_report(f: &SpectralField, t: f64, n: u32, alpha: f64) -> FreqlocReport {
    let (lo, hi) = dyadic_range(f.grid());
    let tn = t.powf(1.0 / n as f64);
    let rows: Vec<FreqlocRow> = (lo..=hi)
        .into_par_iter()
        .map(|dyad| {
            let piece = lp_piece(f, dyad);
            let z = scale(dyad) * tn;
            let (low_l1, low_envelope) = if scale(dyad) >= 1.0 / tn {
                (Some(norms::l1(&lp_low(f, dyad))), Some(z.powf(0.25 - alpha / 2.0)))
            } else {
                (None, None)
            };
            FreqlocRow {
                dyad,
                fhat_linf: norms::linf_fourier(&piece),
                xf_l2: norms::weighted_x_unchecked(&piece),
                f_l1: norms::l1(&piece),
                xf_envelope: scale(dyad).powf(-0.5) + t.powf(0.5 / n as f64) * z.powf(-alpha).min(1.0),
                l1_envelope: 1.0 + z.powf(0.25 - alpha / 2.0),
                low_l1,
                low_envelope,
            }
        })
        .collect();
    let max = |g: &dyn Fn(&FreqlocRow) -> Option<f64>| rows.iter().filter_map(g).fold(0.0, f64::max);
    FreqlocReport {
        t,
        n,
        alpha,
        prefactor_linf: max(&|r| Some(r.fhat_linf)),
        prefactor_xf: max(&|r| Some(r.xf_l2 / r.xf_envelope)),
        prefactor_l1: max(&|r| Some(r.f_l1 / r.l1_envelope)),
        prefactor_low: max(&|r| Some(r.low_l1? / r.low_envelope?)),
        rows,
    }
}
