use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spec::PhaseSpec;
use crate::error::{Error, Result};
use crate::fit::{self, LineFit};
use crate::resonance;

/// Gauss–Legendre points per panel.
pub const PANEL_ORDER: usize = 16;
/// Largest phase change (radians) across one panel before refinement.
pub const PANEL_PHASE: f64 = 10.0;
/// Panels never exceed this width, so smooth amplitudes are resolved at `λ = 0`.
pub const MAX_PANEL_WIDTH: f64 = 0.25;

/// Cost guard: largest `λ` accepted per dimension (`d = 1, 2, 3`).
pub fn lambda_max(d: usize) -> f64 {
    match d {
        1 => 1e5,
        2 => 1e3,
        3 => 50.0,
        _ => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LeadingTerm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscIntegralResult {
    pub value: Complex64,
    pub method: Method,
    /// Quadrature: change under panel halving. Leading term: the formal size
    /// `|leading|/λ` of the first neglected term.
    pub error_estimate: f64,
    pub signature: Option<i32>,
    pub determinant: Option<f64>,
    pub panels_per_axis: Option<usize>,
}

/// `(2π/λ)^{d/2} e^{iπs/4} |det Hess ψ(η₀)|^{−1/2} e^{iλψ(η₀)} F(η₀) χ(η₀)`.
pub fn stationary_phase_leading(spec: &PhaseSpec) -> Result<OscIntegralResult> {
    spec.validate()?;
    let eta0 = spec
        .stationary_point
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("leading term needs a stationary point".into()))?;
    if !(spec.lambda > 0.0) {
        return Err(Error::InvalidArgument("leading term needs λ > 0".into()));
    }
    let hess = spec.phase.hessian(eta0);
    let det = hess.determinant();
    let s = resonance::signature(&hess).map_err(|_| Error::DegenerateHessian(det))?;
    let d = spec.dim() as f64;
    let lam = spec.lambda;
    let value = Complex64::from_polar(
        (2.0 * PI / lam).powf(d / 2.0) / det.abs().sqrt(),
        PI * s as f64 / 4.0 + lam * spec.phase.value(eta0),
    ) * spec.amplitude.value(eta0)
        * spec.cutoff.value(eta0);
    Ok(OscIntegralResult {
        value,
        method: Method::LeadingTerm,
        error_estimate: value.norm() / lam,
        signature: Some(s),
        determinant: Some(det),
        panels_per_axis: None,
    })
}

fn rule() -> GaussLegendre {
    GaussLegendre::new(NonZeroUsize::new(PANEL_ORDER).expect("non-zero order"))
}

/// Composite nodes and weights on `[−r, r]` with `panels` equal panels.
fn composite(r: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let gl = rule();
    let h = 2.0 * r / panels as f64;
    let mut nodes = Vec::with_capacity(panels * PANEL_ORDER);
    let mut weights = Vec::with_capacity(panels * PANEL_ORDER);
    for k in 0..panels {
        let a = -r + k as f64 * h;
        for (x, w) in gl.iter() {
            nodes.push(a + 0.5 * h * (x + 1.0));
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

fn tensor_sum(spec: &PhaseSpec, r: f64, panels: usize) -> Complex64 {
    let (nodes, weights) = composite(r, panels);
    match spec.dim() {
        1 => nodes
            .iter()
            .zip(&weights)
            .map(|(&x, &w)| w * spec.integrand(&[x]))
            .sum(),
        2 => {
            // rows in parallel, summed in a fixed order for reproducibility
            let rows: Vec<Complex64> = nodes
                .par_iter()
                .zip(weights.par_iter())
                .map(|(&x, &wx)| {
                    let s: Complex64 = nodes
                        .iter()
                        .zip(&weights)
                        .map(|(&y, &wy)| wy * spec.integrand(&[x, y]))
                        .sum();
                    wx * s
                })
                .collect();
            rows.into_iter().sum()
        }
        _ => {
            let rows: Vec<Complex64> = nodes
                .par_iter()
                .zip(weights.par_iter())
                .map(|(&x, &wx)| {
                    let mut s = Complex64::new(0.0, 0.0);
                    for (&y, &wy) in nodes.iter().zip(&weights) {
                        for (&z, &wz) in nodes.iter().zip(&weights) {
                            s += wy * wz * spec.integrand(&[x, y, z]);
                        }
                    }
                    wx * s
                })
                .collect();
            rows.into_iter().sum()
        }
    }
}

/// Number of panels per axis such that the phase turns by at most
/// [`PANEL_PHASE`] radians across a panel.
pub fn panel_count(spec: &PhaseSpec) -> usize {
    let r = spec.cutoff.extent();
    let g = spec.lambda.abs() * spec.phase.gradient_bound(r);
    let width = if g > 0.0 { (PANEL_PHASE / g).min(MAX_PANEL_WIDTH) } else { MAX_PANEL_WIDTH };
    ((2.0 * r / width).ceil() as usize).max(1)
}

/// Composite Gauss–Legendre evaluation of `I(λ)` over the cube containing the
/// cutoff's support. The panel count grows linearly with `λ`; the error
/// estimate is the change when every panel is halved.
pub fn oscillatory_quadrature(spec: &PhaseSpec) -> Result<OscIntegralResult> {
    spec.validate()?;
    let d = spec.dim();
    let max = lambda_max(d);
    if d > 3 || spec.lambda.abs() > max {
        return Err(Error::CostGuard {
            lambda: spec.lambda,
            max,
            dim: d,
        });
    }
    let r = spec.cutoff.extent();
    let panels = panel_count(spec);
    let coarse = tensor_sum(spec, r, panels);
    let fine = tensor_sum(spec, r, 2 * panels);
    Ok(OscIntegralResult {
        value: fine,
        method: Method::Quadrature,
        error_estimate: (fine - coarse).norm(),
        signature: None,
        determinant: None,
        panels_per_axis: Some(2 * panels),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// Fit `|I − leading|` (requires a stationary point).
    Remainder,
    /// Fit `|I|` (non-stationary phase).
    Magnitude,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderProbe {
    pub kind: ProbeKind,
    pub lambdas: Vec<f64>,
    pub values: Vec<f64>,
    pub quadrature_errors: Vec<f64>,
    pub fit: LineFit,
    /// `−slope` of the log–log fit.
    pub order: f64,
}

/// Least-squares decay order in `λ` of the remainder (or of `|I|`).
pub fn error_order_probe(spec: &PhaseSpec, lambdas: &[f64], kind: ProbeKind) -> Result<OrderProbe> {
    if lambdas.len() < 4 {
        return Err(Error::InsufficientSamples(format!("need at least 4 λ values, got {}", lambdas.len())));
    }
    let ratio = lambdas[1] / lambdas[0];
    let geometric = lambdas.iter().all(|&l| l > 0.0)
        && ratio > 1.0
        && lambdas.windows(2).all(|w| ((w[1] / w[0]) / ratio - 1.0).abs() < 1e-9);
    if !geometric {
        return Err(Error::InvalidArgument("λ values must form an increasing geometric progression".into()));
    }
    let mut values = Vec::with_capacity(lambdas.len());
    let mut quadrature_errors = Vec::with_capacity(lambdas.len());
    for &lam in lambdas {
        let s = spec.with_lambda(lam);
        let q = oscillatory_quadrature(&s)?;
        let v = match kind {
            ProbeKind::Remainder => (q.value - stationary_phase_leading(&s)?.value).norm(),
            ProbeKind::Magnitude => q.value.norm(),
        };
        values.push(v);
        quadrature_errors.push(q.error_estimate);
    }
    let fit = fit::power_law(lambdas, &values)?;
    Ok(OrderProbe {
        kind,
        lambdas: lambdas.to_vec(),
        values,
        quadrature_errors,
        order: -fit.slope,
        fit,
    })
}
