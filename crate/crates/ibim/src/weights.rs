//! Regularized one-dimensional Dirac weights with compact support `[-eps, eps]`.
//!
//! Three kinds are provided, ordered by regularity index `q`:
//! cosine (`q = 2`), triangle/hat (`q = 1`) and the characteristic
//! function of the tube (`q = 0`).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// `(1/2eps)(1 + cos(pi s / eps))`, regularity q = 2.
    Cos,
    /// `(1/eps)(1 - |s|/eps)`, regularity q = 1.
    Hat,
    /// `1/(2eps)` on `[-eps, eps)`, regularity q = 0.
    Char,
}

impl WeightKind {
    pub fn regularity(self) -> u32 {
        match self {
            WeightKind::Cos => 2,
            WeightKind::Hat => 1,
            WeightKind::Char => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Cos => "cos",
            WeightKind::Hat => "hat",
            WeightKind::Char => "char",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFunction {
    kind: WeightKind,
    epsilon: f64,
}

impl WeightFunction {
    pub fn new(kind: WeightKind, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::InvalidWidth(epsilon));
        }
        Ok(WeightFunction { kind, epsilon })
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn regularity(&self) -> u32 {
        self.kind.regularity()
    }

    /// Pointwise evaluation; zero outside the support.
    ///
    /// The characteristic kind uses the half-open convention `[-eps, eps)`
    /// so a lattice hit at the exact upper tube edge is unambiguous.
    #[inline]
    pub fn eval(&self, s: f64) -> f64 {
        let e = self.epsilon;
        match self.kind {
            WeightKind::Cos => {
                if s.abs() > e {
                    0.0
                } else {
                    (1.0 + (PI * s / e).cos()) / (2.0 * e)
                }
            }
            WeightKind::Hat => {
                // normalized to unit mass: (1/eps)(1 - |s|/eps)
                if s.abs() > e {
                    0.0
                } else {
                    (1.0 - s.abs() / e) / e
                }
            }
            WeightKind::Char => {
                if (-e..e).contains(&s) {
                    1.0 / (2.0 * e)
                } else {
                    0.0
                }
            }
        }
    }

    /// Numerically integrated mass over the support: 64-point
    /// Gauss-Legendre on each half-interval, split at the hat kernel's
    /// kink so the rule sees only smooth pieces.
    pub fn moment(&self) -> f64 {
        let e = self.epsilon;
        crate::reference::gauss_legendre_64(-e, 0.0, |s| self.eval(s))
            + crate::reference::gauss_legendre_64(0.0, e, |s| self.eval(s))
    }
}
