use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::hessian::{hessian_at, signature};
use super::phase::{is_time_resonant, phase_at, phase_coefficient, stationary_points, PhaseH};
use crate::error::{Error, Result};
use crate::params::EquationParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceEntry {
    pub j: u32,
    /// `p − 2j − 2`.
    pub divisor: i64,
    pub coordinates: Vec<f64>,
    pub implied_last: f64,
    pub multiplicity: u64,
    pub d: f64,
    pub phase_value: f64,
    pub time_resonant: bool,
    pub gradient_max: f64,
    pub hessian: Vec<Vec<f64>>,
    pub determinant: f64,
    /// `None` if the Hessian is numerically singular.
    pub signature: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub n: u32,
    pub p: u32,
    pub xi: f64,
    pub entries: Vec<ResonanceEntry>,
    /// Indices `j` that are both space- and time-resonant.
    pub resonant: Vec<u32>,
}

/// Stationary points, phase values, Hessians and signatures at output frequency `ξ`.
pub fn classify(params: &EquationParams, xi: f64) -> Result<ResonanceReport> {
    classify_orders(params.n(), params.p(), xi)
}

/// [`classify`] for any odd `n ≥ 3` and `p ≥ 2`, including `p > n + 1`.
pub fn classify_orders(n: u32, p: u32, xi: f64) -> Result<ResonanceReport> {
    if n < 3 || n % 2 == 0 || p < 2 {
        return Err(Error::Params(format!("need odd n >= 3 and p >= 2, got n = {n}, p = {p}")));
    }
    let phase = PhaseH::with_orders(n, p, xi);
    let mut entries = Vec::new();
    for sp in stationary_points(p, xi)? {
        let hess = hessian_at(&phase, &sp.coordinates)?;
        let grad = phase.gradient(&sp.coordinates)?;
        entries.push(ResonanceEntry {
            j: sp.j,
            divisor: sp.divisor(p),
            implied_last: phase.implied_last(&sp.coordinates),
            multiplicity: sp.multiplicity,
            d: phase_coefficient(n, p, sp.j)?,
            phase_value: phase_at(n, p, sp.j, xi)?,
            time_resonant: is_time_resonant(p, sp.j),
            gradient_max: grad.iter().fold(0.0, |m: f64, v| m.max(v.abs())),
            hessian: hess.row_iter().map(|r| r.iter().copied().collect()).collect(),
            determinant: hess.determinant(),
            signature: signature(&hess).ok(),
            coordinates: sp.coordinates,
        });
    }
    let resonant = entries.iter().filter(|e| e.time_resonant).map(|e| e.j).collect();
    Ok(ResonanceReport {
        n,
        p,
        xi,
        entries,
        resonant,
    })
}

impl ResonanceReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Aligned plain-text table, one row per stationary family.
    pub fn table(&self) -> String {
        let header = ["j", "p-2j-2", "mult", "d_j", "H(xi,xi_j)", "resonant", "sig", "det", "|grad|"];
        let rows: Vec<[String; 9]> = self
            .entries
            .iter()
            .map(|e| {
                [
                    e.j.to_string(),
                    e.divisor.to_string(),
                    e.multiplicity.to_string(),
                    format!("{:.12}", e.d),
                    format!("{:.6e}", e.phase_value),
                    if e.time_resonant { "yes" } else { "no" }.to_string(),
                    e.signature.map_or("singular".into(), |s| s.to_string()),
                    format!("{:.6e}", e.determinant),
                    format!("{:.1e}", e.gradient_max),
                ]
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "n = {}, p = {}, xi = {}", self.n, self.p, self.xi);
        let line = |cells: &[&str], out: &mut String| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  "));
        };
        line(&header, &mut out);
        for r in &rows {
            let cells: Vec<&str> = r.iter().map(String::as_str).collect();
            line(&cells, &mut out);
        }
        let res = if self.resonant.is_empty() {
            "none".to_string()
        } else {
            self.resonant.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
        };
        let _ = writeln!(out, "space-time resonant j: {res}");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_rule() {
        let r52 = classify(&EquationParams::new(5, 2).unwrap(), 1.0).unwrap();
        assert!(r52.resonant.is_empty());
        assert_eq!(r52.entries.len(), 1);
        assert_eq!(r52.entries[0].d, 15.0 / 16.0);
        let r53 = classify(&EquationParams::new(5, 3).unwrap(), 1.0).unwrap();
        assert_eq!(r53.resonant, vec![0, 1]);
        let r74 = classify(&EquationParams::new(7, 4).unwrap(), 1.0).unwrap();
        assert!(r74.resonant.is_empty());
        for e in &r53.entries {
            if e.time_resonant {
                assert_eq!(e.signature, Some(0));
            }
        }
    }

    #[test]
    fn deterministic_and_serializable() {
        let prm = EquationParams::new(7, 5).unwrap();
        let a = classify(&prm, 2.5).unwrap();
        let b = classify(&prm, 2.5).unwrap();
        assert_eq!(a, b);
        let json = a.to_json().unwrap();
        let back: ResonanceReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        let t = a.table();
        assert!(t.contains("space-time resonant j: 1, 2"));
        let lens: Vec<usize> = t.lines().skip(1).take(1 + a.entries.len()).map(|l| l.len()).collect();
        assert!(lens.windows(2).all(|w| w[0] == w[1]));
    }
}
