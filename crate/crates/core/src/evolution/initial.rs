use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{norms, window, Grid1D, SpectralField};

/// Largest accepted data size; larger values leave the small-data regime.
pub const MAX_EPSILON: f64 = 0.5;
/// Allowed `‖û‖_{L²}` share outside the 2/3 band before data counts as unresolved.
pub const SPECTRAL_TAIL_LIMIT: f64 = 1e-10;

/// Shape of the initial datum before calibration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialShape {
    /// `exp(-((x - center)/width)²)`.
    Gaussian { center: f64, width: f64 },
    /// `sech((x - center)/width)`.
    Sech { center: f64, width: f64 },
    /// Gaussian whose spectrum is multiplied by a smooth cutoff equal to 1 on
    /// `|ξ| <= cutoff` and 0 beyond `1.5·cutoff`, so the data are exactly band-limited.
    WindowedGaussian { center: f64, width: f64, cutoff: f64 },
    /// One-sided `1/x` tail on `width ≲ x ≲ extent`, band-limited like
    /// [`InitialShape::WindowedGaussian`].
    AlgebraicTail { width: f64, extent: f64, cutoff: f64 },
    /// Samples at the grid nodes.
    Custom { values: Vec<f64> },
}

impl InitialShape {
    pub fn gaussian(width: f64) -> Self {
        InitialShape::Gaussian { center: 0.0, width }
    }

    fn width(&self) -> Option<f64> {
        match self {
            InitialShape::Gaussian { width, .. }
            | InitialShape::Sech { width, .. }
            | InitialShape::WindowedGaussian { width, .. }
            | InitialShape::AlgebraicTail { width, .. } => Some(*width),
            InitialShape::Custom { .. } => None,
        }
    }

    /// Uncalibrated field on `grid`.
    pub fn sample(&self, grid: Grid1D) -> Result<SpectralField> {
        if let Some(w) = self.width() {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidArgument(format!("width must be positive, got {w}")));
            }
        }
        let window = |cutoff: f64, xi: f64| window::plateau(xi, cutoff, 1.5 * cutoff);
        Ok(match self {
            InitialShape::Gaussian { center, width } => {
                SpectralField::from_fn(grid, |x| (-((x - center) / width).powi(2)).exp())
            }
            InitialShape::Sech { center, width } => {
                SpectralField::from_fn(grid, |x| 1.0 / ((x - center) / width).cosh())
            }
            InitialShape::WindowedGaussian { center, width, cutoff } => {
                check_cutoff(*cutoff, &grid)?;
                // F[e^{-((x-c)/w)²}] = √π w e^{-w²ξ²/4} e^{-icξ}
                SpectralField::from_fourier_fn(grid, |xi| {
                    Complex64::from_polar(
                        PI.sqrt() * width * (-0.25 * width * width * xi * xi).exp(),
                        -center * xi,
                    ) * window(*cutoff, xi)
                })
            }
            InitialShape::AlgebraicTail { width, extent, cutoff } => {
                check_cutoff(*cutoff, &grid)?;
                let raw = SpectralField::from_fn(grid, |x| {
                    window::smooth_step(x / width) * width / (x * x + width * width).sqrt()
                        * (-(x / extent).powi(2)).exp()
                });
                raw.apply_symbol(|_, xi| Complex64::new(window(*cutoff, xi), 0.0))
            }
            InitialShape::Custom { values } => {
                if values.len() != grid.count() {
                    return Err(Error::Dimension {
                        expected: grid.count(),
                        got: values.len(),
                    });
                }
                SpectralField::from_real(grid, values)
            }
        }
        .to_fourier())
    }
}

fn check_cutoff(cutoff: f64, grid: &Grid1D) -> Result<()> {
    if !(cutoff > 0.0) || 1.5 * cutoff > 2.0 / 3.0 * grid.max_wavenumber() {
        return Err(Error::InvalidArgument(format!(
            "frequency cutoff {cutoff} must be positive with 1.5·cutoff inside the 2/3 band ({:.4})",
            2.0 / 3.0 * grid.max_wavenumber()
        )));
    }
    Ok(())
}

/// Share of `‖û‖_{L²}` carried by modes outside the 2/3 band.
pub fn spectral_tail(field: &SpectralField) -> f64 {
    let g = field.grid();
    let cutoff = g.count() as i64 / 3;
    let hat = field.fourier();
    let mut total = 0.0;
    let mut tail = 0.0;
    for (s, v) in hat.iter().enumerate() {
        let w = v.norm_sqr();
        total += w;
        if g.signed_index(s).abs() >= cutoff {
            tail += w;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        (tail / total).sqrt()
    }
}

/// Builds `u₀` of the given shape rescaled so that
/// `‖u₀‖_{H^{(n−1)/2}} + ‖x u₀‖_{L²} = ε`.
pub fn initial_data(grid: Grid1D, shape: &InitialShape, epsilon: f64, n: u32) -> Result<SpectralField> {
    if !(0.0..=MAX_EPSILON).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!(
            "data size ε must lie in [0, {MAX_EPSILON}], got {epsilon}"
        )));
    }
    let raw = shape.sample(grid)?;
    // band-limited shapes are already checked against the 2/3 band by their cutoff
    let sampled = matches!(shape, InitialShape::Gaussian { .. } | InitialShape::Sech { .. });
    if let Some(w) = shape.width().filter(|_| sampled) {
        if w < 2.0 * grid.dx() {
            return Err(Error::Unresolved {
                width: w,
                reason: format!("width below two grid spacings (dx = {})", grid.dx()),
            });
        }
    }
    norms::check_boundary(&raw)?;
    let tail = spectral_tail(&raw);
    if tail > SPECTRAL_TAIL_LIMIT {
        return Err(Error::Unresolved {
            width: shape.width().unwrap_or(f64::NAN),
            reason: format!("spectral tail {tail:.3e} beyond the 2/3 band exceeds {SPECTRAL_TAIL_LIMIT:.0e}"),
        });
    }
    if epsilon == 0.0 {
        return Ok(SpectralField::zeros(grid));
    }
    let size = norms::data_size(&raw, n)?;
    if size == 0.0 {
        return Err(Error::InvalidArgument("initial shape is identically zero".into()));
    }
    Ok(raw.scaled(epsilon / size))
}
