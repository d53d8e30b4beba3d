use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::duhamel::duhamel_rhs;
use super::gauge::max_sample_spacing;
use super::principal::PrincipalTerms;
use crate::error::{Error, Result};
use crate::evolution::Trajectory;
use crate::params::EquationParams;
use crate::spectral::{to_profile, SpectralField};

/// `R = ∂ₜf̂ − principal` along a run, integrated in time by the trapezoid rule.
#[derive(Debug, Clone)]
pub struct ResidualTracker {
    params: EquationParams,
    terms: PrincipalTerms,
    times: Vec<f64>,
    last: Vec<f64>,
    integral: Vec<f64>,
    peaks: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub times: Vec<f64>,
    /// `max_ξ |R(t, ξ)|` at each sample.
    pub sup_per_time: Vec<f64>,
    pub frequencies: Vec<f64>,
    /// `∫ |R(t, ξ)| dt` per frequency (slot order).
    pub integral: Vec<f64>,
    pub max_integral: f64,
    pub argmax_xi: f64,
}

impl ResidualTracker {
    pub fn new(params: &EquationParams) -> Result<Self> {
        Ok(Self {
            params: *params,
            terms: PrincipalTerms::new(params)?,
            times: Vec::new(),
            last: Vec::new(),
            integral: Vec::new(),
            peaks: Vec::new(),
        })
    }

    pub fn terms(&self) -> &PrincipalTerms {
        &self.terms
    }

    /// `R(t, ·)` for the solution `u(t)`.
    pub fn residual_at(&self, u: &SpectralField, t: f64) -> Vec<Complex64> {
        let duhamel = duhamel_rhs(&self.params, u, t);
        let profile = to_profile(u, self.params.n(), t);
        let principal = self.terms.rhs(&profile.f, t);
        duhamel.iter().zip(&principal).map(|(a, b)| a - b).collect()
    }

    pub fn push(&mut self, t: f64, u: &SpectralField) -> Result<()> {
        if let Some(&prev) = self.times.last() {
            if !(t > prev) {
                return Err(Error::InvalidArgument(format!("sample times must increase: {t} after {prev}")));
            }
            if t - prev > max_sample_spacing(prev) * (1.0 + 1e-12) {
                return Err(Error::CoarseSampling(format!(
                    "residual sampling step {} after t = {prev} exceeds {}",
                    t - prev,
                    max_sample_spacing(prev)
                )));
            }
        }
        let current: Vec<f64> = self.residual_at(u, t).iter().map(|v| v.norm()).collect();
        if let Some(&prev) = self.times.last() {
            let h = 0.5 * (t - prev);
            for ((acc, a), b) in self.integral.iter_mut().zip(&self.last).zip(&current) {
                *acc += h * (a + b);
            }
        } else {
            self.integral = vec![0.0; current.len()];
        }
        self.peaks.push(current.iter().cloned().fold(0.0, f64::max));
        self.last = current;
        self.times.push(t);
        Ok(())
    }

    pub fn report(&self, frequencies: Vec<f64>) -> Result<ResidualReport> {
        if self.times.is_empty() {
            return Err(Error::InsufficientSamples("no residual samples".into()));
        }
        let (slot, &max_integral) = self
            .integral
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty grid");
        Ok(ResidualReport {
            times: self.times.clone(),
            sup_per_time: self.peaks.clone(),
            argmax_xi: frequencies[slot],
            frequencies,
            integral: self.integral.clone(),
            max_integral,
        })
    }
}

/// Residual accounting over a stored trajectory.
pub fn residual(trajectory: &Trajectory) -> Result<ResidualReport> {
    if let Some(reason) = &trajectory.invalid {
        return Err(Error::InvalidRun(reason.clone()));
    }
    let first = trajectory
        .samples
        .first()
        .ok_or_else(|| Error::InsufficientSamples("empty trajectory".into()))?;
    let mut tracker = ResidualTracker::new(&trajectory.params)?;
    for s in &trajectory.samples {
        tracker.push(s.t, &s.u)?;
    }
    tracker.report(first.u.grid().frequencies())
}
