use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::phase::{is_time_resonant, PhaseH};
use crate::error::{Error, Result};

/// Relative size below which an eigenvalue counts as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-9;

/// `∂²H/∂ξ_a∂ξ_b = −n(n−1)[ξ_a^{n−2} δ_ab + ξ_p^{n−2}]`.
pub fn hessian_at(phase: &PhaseH, point: &[f64]) -> Result<DMatrix<f64>> {
    let m = phase.dim();
    if point.len() != m {
        return Err(Error::Dimension {
            expected: m,
            got: point.len(),
        });
    }
    let n = phase.n as i32;
    let scale = -(phase.n as f64) * (phase.n as f64 - 1.0);
    let tail = phase.implied_last(point).powi(n - 2);
    Ok(DMatrix::from_fn(m, m, |a, b| {
        let diag = if a == b { point[a].powi(n - 2) } else { 0.0 };
        scale * (diag + tail)
    }))
}

/// Unscaled pattern `J + diag(d)`: all-ones plus a diagonal.
fn ones_plus_diagonal(diag: &[f64]) -> DMatrix<f64> {
    let m = diag.len();
    DMatrix::from_fn(m, m, |a, b| if a == b { 1.0 + diag[a] } else { 1.0 })
}

/// Pattern of the resonant Hessian at `j = (p−1)/2`: `(p−1)/2` twos then
/// `(p−1)/2` zeros on the diagonal, ones elsewhere.
pub fn m1_pattern(p: u32) -> DMatrix<f64> {
    let half = (p as usize - 1) / 2;
    let mut d = vec![1.0; half];
    d.extend(std::iter::repeat(-1.0).take(half));
    ones_plus_diagonal(&d)
}

/// Pattern of the resonant Hessian at `j = (p−3)/2`: `(p−3)/2` twos then
/// `(p+1)/2` zeros on the diagonal, ones elsewhere.
pub fn m2_pattern(p: u32) -> DMatrix<f64> {
    let twos = (p as usize - 3) / 2;
    let zeros = (p as usize + 1) / 2;
    let mut d = vec![1.0; twos];
    d.extend(std::iter::repeat(-1.0).take(zeros));
    ones_plus_diagonal(&d)
}

/// Closed forms at the two resonant families:
/// `j = (p−1)/2`: `−n(n−1)ξ^{n−2}·M₁`, `j = (p−3)/2`: `+n(n−1)ξ^{n−2}·M₂`.
pub fn closed_form_hessian(n: u32, p: u32, j: u32, xi: f64) -> Result<DMatrix<f64>> {
    if p % 2 == 0 || p < 3 || !is_time_resonant(p, j) {
        return Err(Error::ResonanceIndex { j: j as i64, p });
    }
    let c = n as f64 * (n as f64 - 1.0) * xi.powi(n as i32 - 2);
    if 2 * j + 1 == p {
        Ok(m1_pattern(p) * -c)
    } else {
        Ok(m2_pattern(p) * c)
    }
}

fn spectral_norm(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

pub fn eigenvalues(matrix: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !matrix.is_square() {
        return Err(Error::Dimension {
            expected: matrix.nrows(),
            got: matrix.ncols(),
        });
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(matrix.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// `#positive − #negative` eigenvalues; refuses to guess when an eigenvalue is
/// within `SINGULAR_THRESHOLD·‖M‖` of zero.
pub fn signature(matrix: &DMatrix<f64>) -> Result<i32> {
    let ev = eigenvalues(matrix)?;
    let norm = spectral_norm(&ev);
    let threshold = SINGULAR_THRESHOLD * norm;
    let min_abs = ev.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if ev.is_empty() || norm == 0.0 || min_abs <= threshold {
        return Err(Error::NearSingular { min_abs, threshold });
    }
    Ok(ev.iter().map(|v| if *v > 0.0 { 1 } else { -1 }).sum())
}

/// Eigenvalue comparison for the `M₁` pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCheck {
    pub p: u32,
    pub computed: Vec<f64>,
    pub expected: Vec<f64>,
    pub max_error: f64,
}

/// Spectrum of `M₁(p)` against `{−1, +1 each with multiplicity (p−3)/2} ∪
/// {roots of t² − (p−1)t − 1}`.
pub fn m1_spectrum_check(p: u32) -> Result<SpectrumCheck> {
    if p % 2 == 0 || p < 3 {
        return Err(Error::InvalidArgument(format!("M₁ needs odd p ≥ 3, got {p}")));
    }
    let computed = eigenvalues(&m1_pattern(p))?;
    let k = (p as usize - 3) / 2;
    let b = p as f64 - 1.0;
    let disc = (b * b + 4.0).sqrt();
    let mut expected = vec![-1.0; k];
    expected.extend(std::iter::repeat(1.0).take(k));
    expected.push((b - disc) / 2.0);
    expected.push((b + disc) / 2.0);
    expected.sort_by(f64::total_cmp);
    let max_error = computed
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumCheck {
        p,
        computed,
        expected,
        max_error,
    })
}
