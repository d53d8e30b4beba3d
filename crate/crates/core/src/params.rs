use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign in front of the nonlinearity `u^{p-1} u_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NonlinearSign {
    #[default]
    Plus,
    Minus,
}

impl NonlinearSign {
    pub fn value(self) -> f64 {
        match self {
            NonlinearSign::Plus => 1.0,
            NonlinearSign::Minus => -1.0,
        }
    }
}

/// The pair `(n, p)` of
///
/// ```text
/// u_t + (-1)^{(n+1)/2} ∂ₓⁿ u = ± u^{p-1} ∂ₓ u
/// ```
///
/// together with the derived exponents used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct EquationParams {
    n: u32,
    p: u32,
    sign: NonlinearSign,
    theorem_mode: bool,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    n: u32,
    p: u32,
    #[serde(default)]
    sign: NonlinearSign,
    #[serde(default)]
    theorem_mode: bool,
}

impl TryFrom<RawParams> for EquationParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        let params = EquationParams::new(raw.n, raw.p)?.with_sign(raw.sign);
        if raw.theorem_mode {
            params.theorem()
        } else {
            Ok(params)
        }
    }
}

impl From<EquationParams> for RawParams {
    fn from(p: EquationParams) -> Self {
        RawParams {
            n: p.n,
            p: p.p,
            sign: p.sign,
            theorem_mode: p.theorem_mode,
        }
    }
}

impl EquationParams {
    /// Accepts odd `n >= 3` and `2 <= p <= n + 1` (comparison runs may exceed
    /// the supercritical range; see [`EquationParams::theorem`]).
    pub fn new(n: u32, p: u32) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::Params(format!("n must be an odd integer >= 3, got {n}")));
        }
        if p < 2 {
            return Err(Error::Params(format!("p must be >= 2, got {p}")));
        }
        if p > n + 1 {
            return Err(Error::Params(format!("p must be <= n + 1 = {}, got {p}", n + 1)));
        }
        Ok(Self {
            n,
            p,
            sign: NonlinearSign::Plus,
            theorem_mode: false,
        })
    }

    pub fn with_sign(mut self, sign: NonlinearSign) -> Self {
        self.sign = sign;
        self
    }

    /// Restricts to the supercritical window `n >= 5`, `p < n`.
    pub fn theorem(mut self) -> Result<Self> {
        if self.n < 5 || self.p >= self.n {
            return Err(Error::Params(format!(
                "theorem mode requires n >= 5 and p < n, got (n, p) = ({}, {})",
                self.n, self.p
            )));
        }
        self.theorem_mode = true;
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn sign(&self) -> NonlinearSign {
        self.sign
    }

    pub fn is_theorem_mode(&self) -> bool {
        self.theorem_mode
    }

    /// `k = (n - 1) / 2`, the Sobolev index of the energy space.
    pub fn k(&self) -> u32 {
        (self.n - 1) / 2
    }

    /// Pointwise decay rate `1/n` of linear solutions.
    pub fn decay_rate(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Exponent of the linear-behaviour window `ε^{-n(p-1)/(n-p)}`; `None`
    /// outside the supercritical range `p < n`.
    pub fn critical_exponent(&self) -> Option<f64> {
        (self.p < self.n).then(|| {
            let (n, p) = (self.n as f64, self.p as f64);
            n * (p - 1.0) / (n - p)
        })
    }

    /// Dispersion relation exponent; the linear flow multiplies `û(ξ)` by `e^{itξⁿ}`.
    pub fn dispersion_exponent(&self) -> u32 {
        self.n
    }

    pub fn p_is_odd(&self) -> bool {
        self.p % 2 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_exponents() {
        let p = EquationParams::new(5, 3).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.critical_exponent(), Some(5.0));
        let q = EquationParams::new(5, 2).unwrap();
        assert!((q.critical_exponent().unwrap() - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(EquationParams::new(5, 5).unwrap().critical_exponent(), None);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(EquationParams::new(4, 2).is_err());
        assert!(EquationParams::new(1, 2).is_err());
        assert!(EquationParams::new(5, 1).is_err());
        assert!(EquationParams::new(5, 7).is_err());
        assert!(EquationParams::new(3, 2).unwrap().theorem().is_err());
        assert!(EquationParams::new(5, 5).unwrap().theorem().is_err());
        assert!(EquationParams::new(5, 4).unwrap().theorem().is_ok());
    }

    #[test]
    fn serde_validates() {
        let ok: EquationParams = serde_json::from_str(r#"{"n":7,"p":4}"#).unwrap();
        assert_eq!(ok.sign(), NonlinearSign::Plus);
        let bad = serde_json::from_str::<EquationParams>(r#"{"n":6,"p":2}"#);
        assert!(bad.is_err());
    }
}
