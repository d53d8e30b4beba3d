use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::window;

/// Real phase `ψ` on `ℝ^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Phase {
    /// `ψ(η) = ½ ηᵀQη`.
    Quadratic { matrix: Vec<Vec<f64>> },
    /// `ψ(η) = ½ ηᵀQη + Σ cᵢ ηᵢ³ / 6`.
    QuadraticCubic { matrix: Vec<Vec<f64>>, cubic: Vec<f64> },
    /// `ψ(η) = a·η`, no stationary point.
    Linear { direction: Vec<f64> },
}

fn quad_form(q: &[Vec<f64>], eta: &[f64]) -> f64 {
    q.iter()
        .zip(eta)
        .map(|(row, &a)| a * row.iter().zip(eta).map(|(q, b)| q * b).sum::<f64>())
        .sum()
}

impl Phase {
    pub fn diagonal(q: &[f64]) -> Self {
        let d = q.len();
        Phase::Quadratic {
            matrix: (0..d)
                .map(|i| (0..d).map(|j| if i == j { q[i] } else { 0.0 }).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Phase::Quadratic { matrix } | Phase::QuadraticCubic { matrix, .. } => matrix.len(),
            Phase::Linear { direction } => direction.len(),
        }
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let square = |m: &Vec<Vec<f64>>| {
            m.iter().all(|r| r.len() == d)
                && (0..d).all(|i| (0..d).all(|j| m[i][j] == m[j][i]))
        };
        let ok = match self {
            Phase::Quadratic { matrix } => square(matrix),
            Phase::QuadraticCubic { matrix, cubic } => square(matrix) && cubic.len() == d,
            Phase::Linear { .. } => true,
        };
        if d == 0 || !ok {
            return Err(Error::InvalidArgument(
                "phase matrix must be square, symmetric and match the dimension".into(),
            ));
        }
        Ok(())
    }

    pub fn value(&self, eta: &[f64]) -> f64 {
        match self {
            Phase::Quadratic { matrix } => 0.5 * quad_form(matrix, eta),
            Phase::QuadraticCubic { matrix, cubic } => {
                0.5 * quad_form(matrix, eta) + cubic.iter().zip(eta).map(|(c, e)| c * e.powi(3)).sum::<f64>() / 6.0
            }
            Phase::Linear { direction } => direction.iter().zip(eta).map(|(a, e)| a * e).sum(),
        }
    }

    pub fn gradient(&self, eta: &[f64]) -> Vec<f64> {
        let mv = |m: &Vec<Vec<f64>>| -> Vec<f64> {
            m.iter().map(|r| r.iter().zip(eta).map(|(q, e)| q * e).sum()).collect()
        };
        match self {
            Phase::Quadratic { matrix } => mv(matrix),
            Phase::QuadraticCubic { matrix, cubic } => mv(matrix)
                .into_iter()
                .zip(cubic.iter().zip(eta))
                .map(|(g, (c, e))| g + 0.5 * c * e * e)
                .collect(),
            Phase::Linear { direction } => direction.clone(),
        }
    }

    pub fn hessian(&self, eta: &[f64]) -> DMatrix<f64> {
        let d = self.dim();
        match self {
            Phase::Quadratic { matrix } => DMatrix::from_fn(d, d, |i, j| matrix[i][j]),
            Phase::QuadraticCubic { matrix, cubic } => {
                DMatrix::from_fn(d, d, |i, j| matrix[i][j] + if i == j { cubic[i] * eta[i] } else { 0.0 })
            }
            Phase::Linear { .. } => DMatrix::zeros(d, d),
        }
    }

    /// Upper bound for `max_i |∂ᵢψ|` on the cube `[−r, r]^d`.
    pub fn gradient_bound(&self, r: f64) -> f64 {
        let row_sum = |m: &Vec<Vec<f64>>, i: usize| m[i].iter().map(|v| v.abs()).sum::<f64>() * r;
        let d = self.dim();
        (0..d)
            .map(|i| match self {
                Phase::Quadratic { matrix } => row_sum(matrix, i),
                Phase::QuadraticCubic { matrix, cubic } => row_sum(matrix, i) + 0.5 * cubic[i].abs() * r * r,
                Phase::Linear { direction } => direction[i].abs(),
            })
            .fold(0.0, f64::max)
    }
}

/// Amplitude `F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Amplitude {
    Constant { value: f64 },
    /// `exp(−|η − c|² / w²)`.
    Gaussian { center: Vec<f64>, width: f64 },
}

impl Amplitude {
    pub fn value(&self, eta: &[f64]) -> f64 {
        match self {
            Amplitude::Constant { value } => *value,
            Amplitude::Gaussian { center, width } => {
                let r2: f64 = eta.iter().zip(center).map(|(e, c)| (e - c) * (e - c)).sum();
                (-r2 / (width * width)).exp()
            }
        }
    }
}

/// Cutoff `χ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cutoff {
    /// Radial, equal to 1 for `|η| ≤ 1` and 0 for `|η| ≥ 2`.
    Smooth,
    /// Indicator of the cube `[−a, a]^d`, `a ≤ 2`.
    Sharp { half_width: f64 },
}

pub const CUTOFF_RADIUS: f64 = 2.0;

impl Cutoff {
    pub fn value(&self, eta: &[f64]) -> f64 {
        match self {
            Cutoff::Smooth => {
                let r = eta.iter().map(|e| e * e).sum::<f64>().sqrt();
                window::plateau(r, 1.0, CUTOFF_RADIUS)
            }
            Cutoff::Sharp { half_width } => {
                if eta.iter().all(|e| e.abs() <= *half_width) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Half-width of the integration cube.
    pub fn extent(&self) -> f64 {
        match self {
            Cutoff::Smooth => CUTOFF_RADIUS,
            Cutoff::Sharp { half_width } => *half_width,
        }
    }
}

/// `I(λ) = ∫ e^{iλψ(η)} F(η) χ(η) dη` together with an optional known
/// stationary point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpec {
    pub phase: Phase,
    pub amplitude: Amplitude,
    pub cutoff: Cutoff,
    pub lambda: f64,
    #[serde(default)]
    pub stationary_point: Option<Vec<f64>>,
}

impl PhaseSpec {
    pub fn new(phase: Phase, amplitude: Amplitude, cutoff: Cutoff, lambda: f64) -> Self {
        Self {
            phase,
            amplitude,
            cutoff,
            lambda,
            stationary_point: None,
        }
    }

    pub fn with_stationary_point(mut self, eta0: Vec<f64>) -> Self {
        self.stationary_point = Some(eta0);
        self
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self {
            lambda,
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.phase.dim()
    }

    pub fn validate(&self) -> Result<()> {
        self.phase.validate()?;
        let d = self.dim();
        if let Amplitude::Gaussian { center, width } = &self.amplitude {
            if center.len() != d || !(*width > 0.0) {
                return Err(Error::InvalidArgument("Gaussian amplitude needs a d-vector center and width > 0".into()));
            }
        }
        if let Cutoff::Sharp { half_width } = self.cutoff {
            if !(half_width > 0.0 && half_width <= CUTOFF_RADIUS) {
                return Err(Error::InvalidArgument(format!(
                    "sharp cutoff half-width must lie in (0, {CUTOFF_RADIUS}]"
                )));
            }
        }
        if let Some(eta0) = &self.stationary_point {
            if eta0.len() != d {
                return Err(Error::Dimension { expected: d, got: eta0.len() });
            }
        }
        if !self.lambda.is_finite() {
            return Err(Error::InvalidArgument("λ must be finite".into()));
        }
        Ok(())
    }

    /// `e^{iλψ(η)} F(η) χ(η)`.
    pub fn integrand(&self, eta: &[f64]) -> Complex64 {
        let weight = self.amplitude.value(eta) * self.cutoff.value(eta);
        if weight == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(weight, self.lambda * self.phase.value(eta))
    }
}
