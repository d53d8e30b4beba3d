use std::borrow::Cow;

use num_complex::Complex64;

use super::grid::Grid1D;
use super::transform;

/// Which representation of a [`SpectralField`] is currently authoritative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Authority {
    Physical,
    Fourier,
    /// Both buffers are valid and agree under the transform convention.
    Both,
}

/// A function on a [`Grid1D`] carried as physical samples and Fourier
/// coefficients.
///
/// Mutation through [`SpectralField::physical_mut`] or
/// [`SpectralField::fourier_mut`] invalidates the other representation; the
/// accessors recompute it on demand.
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Grid1D,
    physical: Vec<Complex64>,
    fourier: Vec<Complex64>,
    authority: Authority,
}

impl SpectralField {
    pub fn zeros(grid: Grid1D) -> Self {
        let zero = vec![Complex64::new(0.0, 0.0); grid.count()];
        Self {
            grid,
            physical: zero.clone(),
            fourier: zero,
            authority: Authority::Both,
        }
    }

    pub fn from_physical(grid: Grid1D, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len(), grid.count(), "sample count must match the grid");
        Self {
            grid,
            physical: values,
            fourier: Vec::new(),
            authority: Authority::Physical,
        }
    }

    pub fn from_real(grid: Grid1D, values: &[f64]) -> Self {
        Self::from_physical(grid, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = grid.nodes().into_iter().map(f).collect();
        Self::from_real(grid, &values)
    }

    pub fn from_complex_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        Self::from_physical(grid, grid.nodes().into_iter().map(f).collect())
    }

    /// Coefficients in FFT slot order (see [`Grid1D::frequencies`]).
    pub fn from_fourier(grid: Grid1D, coefficients: Vec<Complex64>) -> Self {
        assert_eq!(coefficients.len(), grid.count(), "coefficient count must match the grid");
        Self {
            grid,
            physical: Vec::new(),
            fourier: coefficients,
            authority: Authority::Fourier,
        }
    }

    /// Builds a field from its Fourier symbol `ξ ↦ û(ξ)`.
    pub fn from_fourier_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        Self::from_fourier(grid, grid.frequencies().into_iter().map(f).collect())
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn authority(&self) -> Authority {
        self.authority
    }

    /// Makes both representations valid.
    pub fn sync(&mut self) {
        match self.authority {
            Authority::Both => {}
            Authority::Physical => {
                self.fourier = transform::forward(&self.grid, &self.physical);
            }
            Authority::Fourier => {
                self.physical = transform::inverse(&self.grid, &self.fourier);
            }
        }
        self.authority = Authority::Both;
    }

    /// Returns the field with Fourier coefficients computed (both valid).
    pub fn to_fourier(mut self) -> Self {
        self.sync();
        self
    }

    /// Returns the field with physical samples computed (both valid).
    pub fn to_physical(mut self) -> Self {
        self.sync();
        self
    }

    pub fn physical(&self) -> Cow<'_, [Complex64]> {
        match self.authority {
            Authority::Fourier => Cow::Owned(transform::inverse(&self.grid, &self.fourier)),
            _ => Cow::Borrowed(&self.physical),
        }
    }

    pub fn fourier(&self) -> Cow<'_, [Complex64]> {
        match self.authority {
            Authority::Physical => Cow::Owned(transform::forward(&self.grid, &self.physical)),
            _ => Cow::Borrowed(&self.fourier),
        }
    }

    /// Real parts of the physical samples.
    pub fn real_values(&self) -> Vec<f64> {
        self.physical().iter().map(|v| v.re).collect()
    }

    pub fn physical_mut(&mut self) -> &mut [Complex64] {
        if self.authority == Authority::Fourier {
            self.physical = transform::inverse(&self.grid, &self.fourier);
        }
        self.authority = Authority::Physical;
        &mut self.physical
    }

    pub fn fourier_mut(&mut self) -> &mut [Complex64] {
        if self.authority == Authority::Physical {
            self.fourier = transform::forward(&self.grid, &self.physical);
        }
        self.authority = Authority::Fourier;
        &mut self.fourier
    }

    pub fn into_fourier_vec(mut self) -> Vec<Complex64> {
        if self.authority == Authority::Physical {
            self.sync();
        }
        self.fourier
    }

    pub fn into_physical_vec(mut self) -> Vec<Complex64> {
        if self.authority == Authority::Fourier {
            self.sync();
        }
        self.physical
    }

    /// Maximum relative disagreement between the stored representations,
    /// `‖F(phys) − four‖_∞ / max(‖four‖_∞, tiny)`; zero when only one is valid.
    pub fn consistency_defect(&self) -> f64 {
        if self.authority != Authority::Both {
            return 0.0;
        }
        let recomputed = transform::forward(&self.grid, &self.physical);
        let scale = self.fourier.iter().map(|v| v.norm()).fold(f64::MIN_POSITIVE, f64::max);
        recomputed
            .iter()
            .zip(&self.fourier)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale
    }

    /// `max |û(−ξ) − conj û(ξ)| / max |û|` over non-Nyquist modes.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let hat = self.fourier();
        let scale = hat.iter().map(|v| v.norm()).fold(f64::MIN_POSITIVE, f64::max);
        let nyq = self.grid.nyquist_slot();
        (0..hat.len())
            .filter(|&s| s != nyq)
            .map(|s| (hat[self.grid.mirror_slot(s)] - hat[s].conj()).norm())
            .fold(0.0, f64::max)
            / scale
    }

    /// Largest imaginary part of the physical samples relative to the largest modulus.
    pub fn imaginary_defect(&self) -> f64 {
        let phys = self.physical();
        let scale = phys.iter().map(|v| v.norm()).fold(f64::MIN_POSITIVE, f64::max);
        phys.iter().map(|v| v.im.abs()).fold(0.0, f64::max) / scale
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        match out.authority {
            Authority::Physical => out.physical.iter_mut().for_each(|v| *v *= factor),
            Authority::Fourier => out.fourier.iter_mut().for_each(|v| *v *= factor),
            Authority::Both => {
                out.physical.iter_mut().for_each(|v| *v *= factor);
                out.fourier.iter_mut().for_each(|v| *v *= factor);
            }
        }
        out
    }

    /// Pointwise product of physical samples.
    pub fn pointwise(&self, other: &SpectralField, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        self.grid.same_as(&other.grid).expect("pointwise operation on different grids");
        let a = self.physical();
        let b = other.physical();
        let values = a.iter().zip(b.iter()).map(|(&x, &y)| f(x, y)).collect();
        Self::from_physical(self.grid, values)
    }

    /// Applies a Fourier multiplier `m(ξ)` given per FFT slot.
    pub fn apply_symbol(&self, symbol: impl Fn(usize, f64) -> Complex64) -> Self {
        let hat = self.fourier();
        let freqs = self.grid.frequencies();
        let out = hat
            .iter()
            .enumerate()
            .map(|(s, &v)| v * symbol(s, freqs[s]))
            .collect();
        Self::from_fourier(self.grid, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lazy_views_agree() {
        let g = Grid1D::new(20.0, 128).unwrap();
        let f = SpectralField::from_fn(g, |x| (-x * x).exp());
        let hat = f.fourier().into_owned();
        let synced = f.clone().to_fourier();
        assert_eq!(synced.authority(), Authority::Both);
        assert!(synced.consistency_defect() < 1e-12);
        for (a, b) in hat.iter().zip(synced.fourier().iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn mutation_invalidates_other_side() {
        let g = Grid1D::new(2.0 * PI, 16).unwrap();
        let mut f = SpectralField::zeros(g);
        f.fourier_mut()[1] = Complex64::new(2.0 * PI, 0.0);
        assert_eq!(f.authority(), Authority::Fourier);
        let phys = f.physical();
        for (k, x) in g.nodes().iter().enumerate() {
            assert!((phys[k] - Complex64::from_polar(1.0, *x)).norm() < 1e-12);
        }
    }

    #[test]
    fn real_fields_are_conjugate_symmetric() {
        let g = Grid1D::new(30.0, 256).unwrap();
        let f = SpectralField::from_fn(g, |x| (x / 3.0).sin() * (-x * x / 10.0).exp() + 0.2);
        assert!(f.conjugate_symmetry_defect() < 1e-12);
    }
}
