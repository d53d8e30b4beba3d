use std::collections::VecDeque;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::diagnostics;
use super::invariants::{self, InvariantLedger};
use super::stepper::IfRk4;
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::spectral::{self, norms, Grid1D, Profile, SpectralField};

/// Default starting time for monitored runs.
pub const DEFAULT_T0: f64 = 1.0;
const RING_CAPACITY: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticSample {
    pub t: f64,
    pub mass: f64,
    pub hamiltonian: f64,
    /// `None` when the boundary monitor forbids evaluating `‖x f‖`.
    pub x_norm: Option<f64>,
}

/// Solution state `u(t)` together with the stepping parameters.
#[derive(Debug, Clone)]
pub struct SimulationState {
    params: EquationParams,
    grid: Grid1D,
    stepper: IfRk4,
    t: f64,
    uhat: Vec<Complex64>,
    epsilon: f64,
    dt: f64,
    steps: u64,
    ring: VecDeque<DiagnosticSample>,
}

impl SimulationState {
    /// State with `u(t0) = u0`. The datum is projected onto the dealiased band.
    pub fn new(params: EquationParams, u0: &SpectralField, t0: f64, dt: f64, epsilon: f64) -> Result<Self> {
        if !(t0 >= 0.0 && t0.is_finite()) {
            return Err(Error::InvalidArgument(format!("start time must be ≥ 0, got {t0}")));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
        }
        let grid = *u0.grid();
        let stepper = IfRk4::new(&params, grid);
        let mut uhat = u0.fourier().into_owned();
        stepper.dealias(&mut uhat);
        Ok(Self {
            params,
            grid,
            stepper,
            t: t0,
            uhat,
            epsilon,
            dt,
            steps: 0,
            ring: VecDeque::new(),
        })
    }

    /// Switches off the nonlinearity; stepping then applies the exact propagator.
    pub fn linear_only(mut self) -> Self {
        self.stepper = self.stepper.linear_only();
        self
    }

    pub fn params(&self) -> &EquationParams {
        &self.params
    }
    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }
    pub fn t(&self) -> f64 {
        self.t
    }
    pub fn dt(&self) -> f64 {
        self.dt
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    pub fn steps(&self) -> u64 {
        self.steps
    }
    pub fn is_nonlinear(&self) -> bool {
        self.stepper.is_nonlinear()
    }
    pub fn fourier(&self) -> &[Complex64] {
        &self.uhat
    }

    pub fn field(&self) -> SpectralField {
        SpectralField::from_fourier(self.grid, self.uhat.clone())
    }

    pub fn profile(&self) -> Profile {
        spectral::to_profile(&self.field(), self.params.n(), self.t)
    }

    pub fn diagnostics(&self) -> impl Iterator<Item = &DiagnosticSample> {
        self.ring.iter()
    }

    pub fn mass(&self) -> f64 {
        invariants::mass(&self.field())
    }

    pub fn hamiltonian(&self) -> f64 {
        invariants::hamiltonian(&self.field(), &self.params)
    }

    /// Appends mass, Hamiltonian and (if the boundary monitor allows) the X-norm
    /// to the diagnostics ring.
    pub fn record_diagnostics(&mut self) -> DiagnosticSample {
        let u = self.field();
        let x_norm = if self.t > 0.0 {
            diagnostics::x_norm(&u, self.params.n(), self.t).ok()
        } else {
            None
        };
        let sample = DiagnosticSample {
            t: self.t,
            mass: invariants::mass(&u),
            hamiltonian: invariants::hamiltonian(&u, &self.params),
            x_norm,
        };
        if self.ring.len() == RING_CAPACITY {
            self.ring.pop_front();
        }
        self.ring.push_back(sample);
        sample
    }

    /// One step of size `h`.
    pub fn step_by(&mut self, h: f64) -> Result<()> {
        self.stepper.step(&mut self.uhat, h)?;
        if self.uhat.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite { t: self.t + h });
        }
        self.t += h;
        self.steps += 1;
        Ok(())
    }

    pub fn step(&mut self) -> Result<()> {
        self.step_by(self.dt)
    }

    /// Steps with the nominal `dt`, shortening the last step to land on `target` exactly.
    pub fn advance_to(&mut self, target: f64) -> Result<()> {
        if target < self.t {
            return Err(Error::InvalidArgument(format!(
                "cannot advance backwards from {} to {target}",
                self.t
            )));
        }
        if !self.is_nonlinear() {
            // exact flow: one multiplier
            let h = target - self.t;
            if h > 0.0 {
                self.step_by(h)?;
            }
            return Ok(());
        }
        while target - self.t > 1e-12 * target.max(1.0) {
            let remaining = target - self.t;
            let h = if remaining < self.dt * (1.0 + 1e-9) { remaining } else { self.dt };
            self.step_by(h)?;
        }
        self.t = target;
        Ok(())
    }

    pub(crate) fn restore(
        params: EquationParams,
        grid: Grid1D,
        t: f64,
        uhat: Vec<Complex64>,
        epsilon: f64,
        dt: f64,
        steps: u64,
        nonlinear: bool,
    ) -> Self {
        let mut stepper = IfRk4::new(&params, grid);
        if !nonlinear {
            stepper = stepper.linear_only();
        }
        Self {
            params,
            grid,
            stepper,
            t,
            uhat,
            epsilon,
            dt,
            steps,
            ring: VecDeque::new(),
        }
    }
}

/// Solution at one sample time.
#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub t: f64,
    pub u: SpectralField,
    pub boundary_fraction: f64,
}

impl TrajectorySample {
    pub fn profile(&self, n: u32) -> Profile {
        spectral::to_profile(&self.u, n, self.t)
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub params: EquationParams,
    pub samples: Vec<TrajectorySample>,
    pub invariants: InvariantLedger,
    /// Set when the boundary monitor tripped; the run stops at that sample.
    pub invalid: Option<String>,
}

impl Trajectory {
    pub fn is_valid(&self) -> bool {
        self.invalid.is_none()
    }
}

/// What an observer wants after seeing a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

/// Runs from the state's current time through `sample_times` (sorted, ≥ current
/// time), calling `observer` at each sample. Returns the invariant ledger and the
/// invalid-run flag. A boundary-monitor violation ends the run without error.
pub fn run_with<F>(state: &mut SimulationState, sample_times: &[f64], mut observer: F) -> Result<(InvariantLedger, Option<String>)>
where
    F: FnMut(&SimulationState, &SpectralField, f64) -> Result<Flow>,
{
    if sample_times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("sample times must be sorted".into()));
    }
    let mut ledger = InvariantLedger::default();
    for &t in sample_times {
        state.advance_to(t)?;
        let u = state.field();
        ledger.record(state.t(), &u, state.params());
        let fraction = norms::boundary_mass_fraction(&u);
        let flow = observer(state, &u, fraction)?;
        if fraction > norms::BOUNDARY_MASS_LIMIT {
            return Ok((
                ledger,
                Some(format!(
                    "boundary mass {fraction:.3e} exceeds {:.0e} at t = {}",
                    norms::BOUNDARY_MASS_LIMIT,
                    state.t()
                )),
            ));
        }
        if flow == Flow::Stop {
            break;
        }
    }
    Ok((ledger, None))
}

/// Like [`run_with`] but keeps every sampled field.
pub fn run(state: &mut SimulationState, sample_times: &[f64]) -> Result<Trajectory> {
    let mut samples = Vec::with_capacity(sample_times.len());
    let (invariants, invalid) = run_with(state, sample_times, |s, u, fraction| {
        samples.push(TrajectorySample {
            t: s.t(),
            u: u.clone(),
            boundary_fraction: fraction,
        });
        Ok(Flow::Continue)
    })?;
    Ok(Trajectory {
        params: *state.params(),
        samples,
        invariants,
        invalid,
    })
}

/// `count` sample times from `t0` to `t1`, geometrically spaced (`t0 > 0`).
pub fn geometric_times(t0: f64, t1: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![t0];
    }
    let r = (t1 / t0).ln() / (count - 1) as f64;
    let mut out: Vec<f64> = (0..count).map(|i| t0 * (r * i as f64).exp()).collect();
    out[count - 1] = t1;
    out
}

/// `count` evenly spaced sample times from `t0` to `t1`.
pub fn uniform_times(t0: f64, t1: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![t0];
    }
    (0..count)
        .map(|i| t0 + (t1 - t0) * i as f64 / (count - 1) as f64)
        .collect()
}
