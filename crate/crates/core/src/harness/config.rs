//! Versioned JSON run configuration.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::decay::DecayOptions;
use crate::error::{Error, Result};
use crate::evolution::{self, InitialShape, SimulationState, DEFAULT_T0};
use crate::params::EquationParams;
use crate::spectral::{Grid1D, SpectralField};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub length: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn build(&self) -> Result<Grid1D> {
        Grid1D::new(self.length, self.count)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SampleSchedule {
    Geometric { count: usize },
    Uniform { count: usize },
    Explicit { times: Vec<f64> },
}

impl SampleSchedule {
    pub fn times(&self, t0: f64, t1: f64) -> Result<Vec<f64>> {
        let times = match self {
            SampleSchedule::Geometric { count } => evolution::geometric_times(t0, t1, *count),
            SampleSchedule::Uniform { count } => evolution::uniform_times(t0, t1, *count),
            SampleSchedule::Explicit { times } => times.clone(),
        };
        if times.is_empty() || times.windows(2).any(|w| !(w[1] > w[0])) || times[0] < t0 {
            return Err(Error::InvalidArgument(format!(
                "sample times must be strictly increasing and start at or after t0 = {t0}"
            )));
        }
        Ok(times)
    }
}

/// Seeded perturbation: `bumps` Gaussians of the given width, centers uniform in
/// `[−spread, spread]`, amplitudes uniform in `±amplitude · max|shape|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub amplitude: f64,
    pub bumps: usize,
    pub width: f64,
    pub spread: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Conservation,
    LinearDecay,
    LpDecay,
    NonlinearDecay,
    Residual,
    Sweep,
}

/// Mass and Hamiltonian drift limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConservationLimits {
    pub mass: f64,
    pub hamiltonian: f64,
}

impl Default for ConservationLimits {
    fn default() -> Self {
        Self {
            mass: 1e-8,
            hamiltonian: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub epsilons: Vec<f64>,
    /// Horizon of each run; runs without breakdown are censored there.
    pub horizon: f64,
    /// Sample spacing for the `‖f̂‖_{L^∞}` monitor.
    pub spacing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    pub params: EquationParams,
    pub grid: GridSpec,
    pub epsilon: f64,
    pub t_final: f64,
    #[serde(default = "default_t0")]
    pub t0: f64,
    pub dt: f64,
    pub initial: InitialShape,
    pub samples: SampleSchedule,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default = "default_betas")]
    pub betas: Vec<f64>,
    /// Exponent `q` for the `L^q` check.
    #[serde(default)]
    pub lp_exponent: Option<f64>,
    #[serde(default)]
    pub decay: DecayOptions,
    #[serde(default)]
    pub conservation: ConservationLimits,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub perturbation: Option<Perturbation>,
    #[serde(default)]
    pub seed: u64,
    /// Output directory (the CLI's `--out` overrides it).
    #[serde(default)]
    pub output: Option<String>,
}

fn default_t0() -> f64 {
    DEFAULT_T0
}

fn default_betas() -> Vec<f64> {
    vec![0.0]
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::Format(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        self.grid.build()?;
        if !(self.t0 >= 0.0 && self.t_final >= self.t0) {
            return Err(Error::InvalidArgument(format!(
                "need 0 ≤ t0 ≤ t_final, got t0 = {}, t_final = {}",
                self.t0, self.t_final
            )));
        }
        if !(self.dt > 0.0) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {}", self.dt)));
        }
        self.samples.times(self.t0, self.t_final)?;
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid1D> {
        self.grid.build()
    }

    pub fn sample_times(&self) -> Result<Vec<f64>> {
        self.samples.times(self.t0, self.t_final)
    }

    /// The calibrated datum `u(t₀)` with `‖u‖_{H^{(n−1)/2}} + ‖xu‖_{L²} = ε`.
    pub fn initial_field(&self) -> Result<SpectralField> {
        self.initial_field_with(self.epsilon)
    }

    pub fn initial_field_with(&self, epsilon: f64) -> Result<SpectralField> {
        evolution::initial_data(self.grid()?, &self.shape()?, epsilon, self.params.n())
    }

    /// The configured shape with the seeded perturbation applied, if any.
    pub fn shape(&self) -> Result<InitialShape> {
        Ok(match &self.perturbation {
            None => self.initial.clone(),
            Some(p) => InitialShape::Custom {
                values: perturbed(self.grid()?, &self.initial, p, self.seed)?,
            },
        })
    }

    pub fn state(&self) -> Result<SimulationState> {
        self.state_with(self.epsilon)
    }

    pub fn state_with(&self, epsilon: f64) -> Result<SimulationState> {
        let u0 = self.initial_field_with(epsilon)?;
        SimulationState::new(self.params, &u0, self.t0, self.dt, epsilon)
    }
}

fn perturbed(grid: Grid1D, shape: &InitialShape, p: &Perturbation, seed: u64) -> Result<Vec<f64>> {
    let mut values = shape.sample(grid)?.real_values();
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bumps: Vec<(f64, f64)> = (0..p.bumps)
        .map(|_| (rng.gen_range(-p.spread..=p.spread), rng.gen_range(-1.0..=1.0)))
        .collect();
    for (v, x) in values.iter_mut().zip(grid.nodes()) {
        *v += p.amplitude * peak * bumps.iter().map(|(c, a)| a * (-((x - c) / p.width).powi(2)).exp()).sum::<f64>();
    }
    Ok(values)
}
