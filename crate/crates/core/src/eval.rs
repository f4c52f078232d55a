use crate::error::{Error, Result};
use crate::Complex;
use serde::{Deserialize, Serialize};

/// A point s = σ + it in the complex plane.
///
/// Both coordinates must be finite; NaN/∞ are rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SPoint {
    pub sigma: f64,
    pub t: f64,
}

impl SPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::InvalidInput(format!(
                "SPoint coordinates must be finite, got ({sigma}, {t})"
            )));
        }
        Ok(SPoint { sigma, t })
    }

    pub fn as_complex(&self) -> Complex {
        Complex::new(self.sigma, self.t)
    }

    pub fn conj(&self) -> SPoint {
        SPoint {
            sigma: self.sigma,
            t: -self.t,
        }
    }
}

impl From<SPoint> for Complex {
    fn from(p: SPoint) -> Complex {
        p.as_complex()
    }
}

/// A computed complex value together with an a-priori truncation-error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex,
    pub abs_error: f64,
}

impl EvalResult {
    pub fn new(value: Complex, abs_error: f64) -> Self {
        debug_assert!(abs_error >= 0.0 && abs_error.is_finite());
        EvalResult { value, abs_error }
    }
}
