use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid on `[-L/2, L/2)` standing in for the real line.
///
/// Nodes are `x_k = -L/2 + k L/N`; frequencies are `ξ_m = 2π m / L` for
/// signed `m ∈ [-N/2, N/2)`, stored in FFT order (`0, 1, …, N/2-1, -N/2, …, -1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridSpec", into = "GridSpec")]
pub struct Grid1D {
    length: f64,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct GridSpec {
    length: f64,
    count: usize,
}

impl TryFrom<GridSpec> for Grid1D {
    type Error = Error;
    fn try_from(spec: GridSpec) -> Result<Self> {
        Grid1D::new(spec.length, spec.count)
    }
}

impl From<Grid1D> for GridSpec {
    fn from(g: Grid1D) -> Self {
        GridSpec {
            length: g.length,
            count: g.count,
        }
    }
}

impl Grid1D {
    pub fn new(length: f64, count: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::GridLength(length));
        }
        if count < 8 || !count.is_power_of_two() {
            return Err(Error::GridSize(count));
        }
        Ok(Self { length, count })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn dx(&self) -> f64 {
        self.length / self.count as f64
    }

    /// Frequency spacing `2π / L`.
    pub fn dxi(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Largest resolved `|ξ| = π N / L` (attained only by the Nyquist mode).
    pub fn max_wavenumber(&self) -> f64 {
        PI * self.count as f64 / self.length
    }

    pub fn node(&self, k: usize) -> f64 {
        -0.5 * self.length + k as f64 * self.dx()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.node(k)).collect()
    }

    /// Signed wavenumber index of FFT slot `slot`.
    pub fn signed_index(&self, slot: usize) -> i64 {
        let n = self.count as i64;
        let s = slot as i64;
        if s < n / 2 {
            s
        } else {
            s - n
        }
    }

    /// FFT slot holding signed wavenumber index `m` (taken modulo `N`).
    pub fn slot(&self, m: i64) -> usize {
        m.rem_euclid(self.count as i64) as usize
    }

    pub fn frequency(&self, slot: usize) -> f64 {
        self.signed_index(slot) as f64 * self.dxi()
    }

    /// Frequencies in FFT order.
    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.count).map(|s| self.frequency(s)).collect()
    }

    /// Frequencies in ascending order together with the FFT slot of each.
    pub fn ordered_frequencies(&self) -> Vec<(f64, usize)> {
        let half = (self.count / 2) as i64;
        (-half..half)
            .map(|m| (m as f64 * self.dxi(), self.slot(m)))
            .collect()
    }

    /// Slot of the unpaired Nyquist mode `m = -N/2`.
    pub fn nyquist_slot(&self) -> usize {
        self.count / 2
    }

    /// Slot of `-ξ` for the mode stored in `slot` (the Nyquist mode maps to itself).
    pub fn mirror_slot(&self, slot: usize) -> usize {
        (self.count - slot) % self.count
    }

    pub fn same_as(&self, other: &Grid1D) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "(L={}, N={}) vs (L={}, N={})",
                self.length, self.count, other.length, other.count
            )))
        }
    }
}
