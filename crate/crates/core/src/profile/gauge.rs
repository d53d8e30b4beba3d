//! The phase correction
//!
//! ```text
//! B(t, ξ) = c ξ|ξ|^{−(p−1)(n−2)/2} ∫_{t₀}^{t} |f̂(s, ξ)|^{p−1} s^{−(p−1)/2} ds
//! ```
//!
//! accumulated by the trapezoid rule over the sample times, and `w = e^{−iB} f̂`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::DEFAULT_T0;

/// Largest sample spacing accepted after time `t`.
pub fn max_sample_spacing(t: f64) -> f64 {
    (t / 20.0).min(1.0)
}

#[derive(Debug, Clone)]
pub struct GaugeHistory {
    n: u32,
    p: u32,
    c: f64,
    frequencies: Vec<f64>,
    times: Vec<f64>,
    last: Vec<f64>,
    integral: Vec<f64>,
    /// `(s, |f̂(s,·)|^{p−1})` at every sample.
    history: Vec<(f64, Vec<f64>)>,
    keep_history: bool,
}

impl GaugeHistory {
    /// `c` is the real resonant constant; it is forced to 0 for even `p`.
    pub fn new(n: u32, p: u32, c: f64, frequencies: Vec<f64>) -> Self {
        let len = frequencies.len();
        Self {
            n,
            p,
            c: if p % 2 == 0 { 0.0 } else { c },
            frequencies,
            times: Vec::new(),
            last: vec![0.0; len],
            integral: vec![0.0; len],
            history: Vec::new(),
            keep_history: false,
        }
    }

    /// Also retain the raw `|f̂|^{p−1}` samples.
    pub fn keeping_history(mut self) -> Self {
        self.keep_history = true;
        self
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn history(&self) -> &[(f64, Vec<f64>)] {
        &self.history
    }

    pub fn constant(&self) -> f64 {
        self.c
    }

    /// Adds the sample `f̂(t, ·)`. The first sample must sit at `t₀ = 1`; later ones
    /// must increase by at most [`max_sample_spacing`].
    pub fn push(&mut self, t: f64, fhat: &[Complex64]) -> Result<()> {
        if fhat.len() != self.frequencies.len() {
            return Err(Error::Dimension {
                expected: self.frequencies.len(),
                got: fhat.len(),
            });
        }
        match self.times.last() {
            None if t != DEFAULT_T0 => {
                return Err(Error::InvalidArgument(format!(
                    "gauge history starts at t = {DEFAULT_T0}, got {t}"
                )))
            }
            Some(&prev) if !(t > prev) => {
                return Err(Error::InvalidArgument(format!("sample times must increase: {t} after {prev}")))
            }
            Some(&prev) if t - prev > max_sample_spacing(prev) * (1.0 + 1e-12) => {
                return Err(Error::CoarseSampling(format!(
                    "step {} after t = {prev} exceeds {}",
                    t - prev,
                    max_sample_spacing(prev)
                )))
            }
            _ => {}
        }
        let q = self.p as f64 - 1.0;
        let weight = t.powf(-q / 2.0);
        let powers: Vec<f64> = fhat.iter().map(|v| v.norm().powf(q)).collect();
        let current: Vec<f64> = powers.iter().map(|a| a * weight).collect();
        if let Some(&prev) = self.times.last() {
            let h = 0.5 * (t - prev);
            for ((acc, a), b) in self.integral.iter_mut().zip(&self.last).zip(&current) {
                *acc += h * (a + b);
            }
        }
        self.last = current;
        self.times.push(t);
        if self.keep_history {
            self.history.push((t, powers));
        }
        Ok(())
    }

    /// `B(t, ξ)` at the latest sample time.
    pub fn b(&self) -> Result<Vec<f64>> {
        if self.times.is_empty() {
            return Err(Error::EmptyHistory);
        }
        let (n, p) = (self.n as f64, self.p as f64);
        let exponent = -(p - 1.0) * (n - 2.0) / 2.0;
        Ok(self
            .frequencies
            .iter()
            .zip(&self.integral)
            .map(|(&xi, &acc)| {
                if self.c == 0.0 || xi == 0.0 {
                    0.0
                } else {
                    self.c * xi * xi.abs().powf(exponent) * acc
                }
            })
            .collect())
    }

    /// `w = e^{−iB} f̂`; `|w| = |f̂|` up to rounding and `w = f̂` when `B = 0`.
    pub fn renormalize(&self, fhat: &[Complex64]) -> Result<Vec<Complex64>> {
        let b = self.b()?;
        Ok(fhat
            .iter()
            .zip(&b)
            .map(|(v, &b)| if b == 0.0 { *v } else { v * Complex64::from_polar(1.0, -b) })
            .collect())
    }
}
