use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::EquationParams;

/// The `p`-linear phase `H(ξ, ξ₁, …, ξ_{p−1}) = ξⁿ − Σ_{a=1}^{p} ξ_aⁿ` with the
/// last input frequency implied, `ξ_p = ξ − ξ₁ − ⋯ − ξ_{p−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseH {
    pub n: u32,
    pub p: u32,
    pub xi: f64,
}

impl PhaseH {
    pub fn new(params: &EquationParams, xi: f64) -> Self {
        Self::with_orders(params.n(), params.p(), xi)
    }

    /// Without the `p ≤ n + 1` restriction of [`EquationParams`]; the phase and
    /// its critical points make sense for any `n ≥ 2`, `p ≥ 2`.
    pub fn with_orders(n: u32, p: u32, xi: f64) -> Self {
        assert!(n >= 2 && p >= 2, "phase needs n >= 2 and p >= 2");
        Self { n, p, xi }
    }

    /// Number of free variables, `p − 1`.
    pub fn dim(&self) -> usize {
        self.p as usize - 1
    }

    fn check(&self, point: &[f64]) -> Result<()> {
        if point.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: point.len(),
            });
        }
        Ok(())
    }

    pub fn implied_last(&self, point: &[f64]) -> f64 {
        self.xi - point.iter().sum::<f64>()
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        self.check(point)?;
        let n = self.n as i32;
        let last = self.implied_last(point);
        Ok(self.xi.powi(n) - point.iter().map(|v| v.powi(n)).sum::<f64>() - last.powi(n))
    }

    /// `∂H/∂ξ_a = n(ξ_p^{n−1} − ξ_a^{n−1})`.
    pub fn gradient(&self, point: &[f64]) -> Result<Vec<f64>> {
        self.check(point)?;
        let n = self.n as i32;
        let tail = self.implied_last(point).powi(n - 1);
        Ok(point
            .iter()
            .map(|v| self.n as f64 * (tail - v.powi(n - 1)))
            .collect())
    }
}

/// Critical point family `ξ₍ⱼ₎` of `H` in the free variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub j: u32,
    /// `ξ_{j,p} = ξ / (p − 2j − 2)`.
    pub value: f64,
    /// `j` copies of `−ξ_{j,p}` followed by `p − j − 1` copies of `ξ_{j,p}`.
    pub coordinates: Vec<f64>,
    /// Number of distinct permutations, `C(p−1, j)`.
    pub multiplicity: u64,
}

impl StationaryPoint {
    /// `p − 2j − 2`.
    pub fn divisor(&self, p: u32) -> i64 {
        p as i64 - 2 * self.j as i64 - 2
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Indices `j ∈ {0, …, p−1}` with `p − 2j − 2 ≠ 0`.
pub fn admissible_indices(p: u32) -> Vec<u32> {
    (0..p).filter(|&j| p as i64 - 2 * j as i64 - 2 != 0).collect()
}

pub fn stationary_point(p: u32, j: u32, xi: f64) -> Result<StationaryPoint> {
    let d = p as i64 - 2 * j as i64 - 2;
    if j >= p || d == 0 {
        return Err(Error::ResonanceIndex { j: j as i64, p });
    }
    let value = xi / d as f64;
    let mut coordinates = vec![-value; j as usize];
    coordinates.extend(std::iter::repeat(value).take((p - j - 1) as usize));
    Ok(StationaryPoint {
        j,
        value,
        coordinates,
        multiplicity: binomial(p as u64 - 1, j as u64),
    })
}

/// All stationary-point families for output frequency `ξ ≠ 0`, one
/// representative per family.
pub fn stationary_points(p: u32, xi: f64) -> Result<Vec<StationaryPoint>> {
    if xi == 0.0 || !xi.is_finite() {
        return Err(Error::ZeroFrequency);
    }
    admissible_indices(p)
        .into_iter()
        .map(|j| stationary_point(p, j, xi))
        .collect()
}

/// `d_j = 1 − (p − 2j − 2)^{−(n−1)}`.
pub fn phase_coefficient(n: u32, p: u32, j: u32) -> Result<f64> {
    let d = p as i64 - 2 * j as i64 - 2;
    if j >= p || d == 0 {
        return Err(Error::ResonanceIndex { j: j as i64, p });
    }
    Ok(1.0 - (d as f64).powi(-(n as i32 - 1)))
}

/// Closed-form value `H(ξ, ξ₍ⱼ₎) = d_j ξⁿ`.
pub fn phase_at(n: u32, p: u32, j: u32, xi: f64) -> Result<f64> {
    Ok(phase_coefficient(n, p, j)? * xi.powi(n as i32))
}

/// `j` is time-resonant (`d_j = 0`) iff `p − 2j − 2 = ±1`.
pub fn is_time_resonant(p: u32, j: u32) -> bool {
    (p as i64 - 2 * j as i64 - 2).abs() == 1
}

/// Space-time resonant indices: `{(p−3)/2, (p−1)/2}` for odd `p`, empty otherwise.
pub fn resonant_indices(p: u32) -> Vec<u32> {
    admissible_indices(p)
        .into_iter()
        .filter(|&j| is_time_resonant(p, j))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(n: u32, p: u32) -> EquationParams {
        EquationParams::new(n, p).unwrap()
    }

    #[test]
    fn quadratic_has_one_family() {
        let pts = stationary_points(2, 1.0).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].j, 1);
        let h = PhaseH::new(&params(5, 2), 1.0);
        assert_eq!(h.implied_last(&pts[0].coordinates), 0.5);
        assert_eq!(pts[0].coordinates, vec![0.5]);
        assert_eq!(phase_coefficient(5, 2, 1).unwrap(), 15.0 / 16.0);
    }

    #[test]
    fn cubic_points() {
        let pts = stationary_points(3, 1.0).unwrap();
        let coords: Vec<_> = pts.iter().map(|s| s.coordinates.clone()).collect();
        assert_eq!(coords, vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![1.0 / 3.0, 1.0 / 3.0]]);
        assert_eq!(resonant_indices(3), vec![0, 1]);
        assert_eq!(phase_coefficient(7, 3, 1).unwrap(), 0.0);
    }

    #[test]
    fn even_p_exclusion() {
        let js: Vec<_> = stationary_points(4, 1.0).unwrap().iter().map(|s| s.j).collect();
        assert_eq!(js, vec![0, 2, 3]);
        assert!(resonant_indices(4).is_empty());
        assert!(stationary_point(4, 1, 1.0).is_err());
        assert!(stationary_points(4, 0.0).is_err());
        assert_eq!(resonant_indices(5), vec![1, 2]);
    }

    #[test]
    fn gradients_vanish_and_phase_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [5u32, 7, 9] {
            for p in 2..n {
                let prm = params(n, p);
                for _ in 0..100 {
                    let mut xi: f64 = rng.gen_range(-4.0..4.0);
                    if xi.abs() < 1e-3 {
                        xi = 1.0;
                    }
                    let h = PhaseH::new(&prm, xi);
                    for sp in stationary_points(p, xi).unwrap() {
                        let g = h.gradient(&sp.coordinates).unwrap();
                        let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                        assert!(gmax <= 1e-10 * n as f64 * xi.abs().powi(n as i32 - 1));
                        let direct = h.eval(&sp.coordinates).unwrap();
                        let closed = phase_at(n, p, sp.j, xi).unwrap();
                        let scale = xi.abs().powi(n as i32);
                        assert!((direct - closed).abs() <= 1e-12 * scale, "n={n} p={p} j={}", sp.j);
                    }
                }
            }
        }
    }

    #[test]
    fn full_permutation_symmetry() {
        let h = PhaseH::new(&params(7, 4), 1.3);
        let pt = [0.2, -0.7, 0.4];
        let last = h.implied_last(&pt);
        let base = h.eval(&pt).unwrap();
        // swap a free variable with the implied one
        let swapped = [last, -0.7, 0.4];
        assert!((h.eval(&swapped).unwrap() - base).abs() < 1e-13);
        let perm = [0.4, 0.2, -0.7];
        assert!((h.eval(&perm).unwrap() - base).abs() < 1e-13);
    }

    #[test]
    fn newton_roots_land_on_enumerated_points() {
        // independent root finding on ∇H = 0 for p = 3 from nearby starts
        let prm = params(5, 3);
        let h = PhaseH::new(&prm, 1.0);
        let expected = stationary_points(3, 1.0).unwrap();
        for sp in &expected {
            let mut x = [sp.coordinates[0] + 0.05, sp.coordinates[1] - 0.04];
            for _ in 0..50 {
                let g = h.gradient(&x).unwrap();
                let eps = 1e-6;
                let mut jac = [[0.0; 2]; 2];
                for b in 0..2 {
                    let mut xp = x;
                    let mut xm = x;
                    xp[b] += eps;
                    xm[b] -= eps;
                    let gp = h.gradient(&xp).unwrap();
                    let gm = h.gradient(&xm).unwrap();
                    for a in 0..2 {
                        jac[a][b] = (gp[a] - gm[a]) / (2.0 * eps);
                    }
                }
                let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
                let dx0 = (jac[1][1] * g[0] - jac[0][1] * g[1]) / det;
                let dx1 = (-jac[1][0] * g[0] + jac[0][0] * g[1]) / det;
                x[0] -= dx0;
                x[1] -= dx1;
            }
            assert!((x[0] - sp.coordinates[0]).abs() < 1e-9);
            assert!((x[1] - sp.coordinates[1]).abs() < 1e-9);
        }
    }
}
