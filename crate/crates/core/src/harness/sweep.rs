//! ε-sweep of the breakdown time `T*` against the predicted window exponent.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{initial_data, uniform_times, InitialShape, SimulationState};
use crate::fit::{self, LineFit};
use crate::params::EquationParams;
use crate::spectral::{norms, Grid1D};

/// `T*` is the first sample where `‖f̂‖_{L^∞}` exceeds this multiple of its initial value.
pub const GROWTH_FACTOR: f64 = 2.0;
pub const SLOPE_TOLERANCE: f64 = 0.3;

/// `n(p−1)/(n−p)`, or `None` when `p ≥ n`.
pub fn predicted_slope(n: u32, p: u32) -> Option<f64> {
    (p < n).then(|| (n * (p - 1)) as f64 / (n - p) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSetup {
    pub params: EquationParams,
    pub grid: Grid1D,
    pub shape: InitialShape,
    pub t0: f64,
    pub dt: f64,
    pub horizon: f64,
    pub spacing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub epsilon: f64,
    /// Breakdown time, or the last monitored time when censored.
    pub t_star: f64,
    pub censored: bool,
    pub initial_linf: f64,
    pub final_linf: f64,
    /// Why the run stopped short of the horizon without breakdown, if it did.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: u32,
    pub p: u32,
    pub growth_factor: f64,
    pub rows: Vec<SweepRow>,
    pub predicted: Option<f64>,
    /// Fit over uncensored rows only; absent with fewer than two.
    pub fit: Option<LineFit>,
    pub slope: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

fn sweep_one(setup: &SweepSetup, epsilon: f64) -> Result<SweepRow> {
    let u0 = initial_data(setup.grid, &setup.shape, epsilon, setup.params.n())?;
    let mut state = SimulationState::new(setup.params, &u0, setup.t0, setup.dt, epsilon)?;
    let initial_linf = norms::linf_fourier(&u0);
    let count = ((setup.horizon - setup.t0) / setup.spacing).ceil() as usize + 1;
    let mut last_t = setup.t0;
    let mut last_linf = initial_linf;
    for &t in uniform_times(setup.t0, setup.horizon, count).iter().skip(1) {
        match state.advance_to(t) {
            Ok(()) => {}
            // a CFL violation or non-finite value is itself a blow-up
            Err(Error::Cfl { .. } | Error::NonFinite { .. }) => {
                return Ok(SweepRow {
                    epsilon,
                    t_star: state.t(),
                    censored: false,
                    initial_linf,
                    final_linf: f64::INFINITY,
                    note: Some("step rejected".into()),
                })
            }
            Err(e) => return Err(e),
        }
        let u = state.field();
        last_t = state.t();
        last_linf = norms::linf_fourier(&u);
        if last_linf > GROWTH_FACTOR * initial_linf {
            return Ok(SweepRow {
                epsilon,
                t_star: last_t,
                censored: false,
                initial_linf,
                final_linf: last_linf,
                note: None,
            });
        }
        let fraction = norms::boundary_mass_fraction(&u);
        if fraction > norms::BOUNDARY_MASS_LIMIT {
            return Ok(SweepRow {
                epsilon,
                t_star: last_t,
                censored: true,
                initial_linf,
                final_linf: last_linf,
                note: Some(format!("boundary mass {fraction:.3e}")),
            });
        }
    }
    Ok(SweepRow {
        epsilon,
        t_star: last_t,
        censored: true,
        initial_linf,
        final_linf: last_linf,
        note: None,
    })
}

/// Runs every ε independently in parallel; rows come back sorted by ε.
pub fn epsilon_sweep(setup: &SweepSetup, epsilons: &[f64]) -> Result<SweepReport> {
    if epsilons.is_empty() || !(setup.spacing > 0.0) || !(setup.horizon > setup.t0) {
        return Err(Error::InvalidArgument(
            "sweep needs at least one ε, positive spacing and horizon > t0".into(),
        ));
    }
    let mut rows = epsilons
        .par_iter()
        .map(|&eps| sweep_one(setup, eps))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.epsilon.total_cmp(&b.epsilon));

    let (n, p) = (setup.params.n(), setup.params.p());
    let predicted = predicted_slope(n, p);
    let observed: Vec<&SweepRow> = rows.iter().filter(|r| !r.censored).collect();
    let fit = if observed.len() >= 2 {
        let x: Vec<f64> = observed.iter().map(|r| 1.0 / r.epsilon).collect();
        let y: Vec<f64> = observed.iter().map(|r| r.t_star).collect();
        Some(fit::power_law(&x, &y)?)
    } else {
        None
    };
    let slope = fit.as_ref().map(|f| f.slope);
    let pass = match (slope, predicted) {
        (Some(s), Some(q)) => (s / q - 1.0).abs() <= SLOPE_TOLERANCE,
        _ => false,
    };
    Ok(SweepReport {
        n,
        p,
        growth_factor: GROWTH_FACTOR,
        rows,
        predicted,
        fit,
        slope,
        tolerance: SLOPE_TOLERANCE,
        pass,
    })
}
