//! Pluggable analytic functions for the argument-principle and Jensen
//! machinery. The production map is ζ backed by the evaluation engine;
//! polynomial maps provide exact ground truth in tests.

use crate::error::{Error, Result};
use crate::zeta::{default_deriv_radius, zeta_c, zeta_deriv_c};
use crate::{Complex, SPoint};

/// An analytic function exposing its value and logarithmic derivative.
pub trait AnalyticMap {
    fn value(&self, s: Complex) -> Result<Complex>;

    /// f′/f at s.
    fn log_deriv(&self, s: Complex) -> Result<Complex>;

    /// log |f(s)|; errors when f vanishes to working precision.
    fn log_abs(&self, s: Complex) -> Result<f64> {
        let v = self.value(s)?;
        let n = v.norm();
        if n < 1e-300 {
            return Err(Error::NearZeroOnPath { t: s.im, dist: n });
        }
        Ok(n.ln())
    }
}

/// ζ(s) through the evaluation engine.
#[derive(Debug, Clone, Copy)]
pub struct ZetaMap {
    pub target: f64,
}

impl Default for ZetaMap {
    fn default() -> Self {
        ZetaMap { target: 1e-12 }
    }
}

impl AnalyticMap for ZetaMap {
    fn value(&self, s: Complex) -> Result<Complex> {
        Ok(zeta_c(s, self.target)?.value)
    }

    fn log_deriv(&self, s: Complex) -> Result<Complex> {
        let z = zeta_c(s, self.target)?;
        if z.value.norm() < 1e-13 {
            return Err(Error::NearZeroOnPath {
                t: s.im,
                dist: z.value.norm(),
            });
        }
        let radius = default_deriv_radius(SPoint::new(s.re, s.im)?);
        let d = zeta_deriv_c(s, 1, radius, 1e-10)?;
        Ok(d.value / z.value)
    }
}

/// (s − s₀)^m, the exact-multiplicity oracle.
#[derive(Debug, Clone, Copy)]
pub struct PowerMap {
    pub center: Complex,
    pub order: u32,
}

impl AnalyticMap for PowerMap {
    fn value(&self, s: Complex) -> Result<Complex> {
        Ok((s - self.center).powu(self.order))
    }

    fn log_deriv(&self, s: Complex) -> Result<Complex> {
        let d = s - self.center;
        if d.norm() == 0.0 {
            return Err(Error::NearZeroOnPath { t: s.im, dist: 0.0 });
        }
        Ok(self.order as f64 / d)
    }
}
