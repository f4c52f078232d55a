//! Empirical multiplicity-weighted zero-density counters built over the
//! certified zero cache, plus the decaying reference curve they are
//! compared against (reported, never asserted).

use crate::bounds::BoundConstants;
use crate::error::{Error, Result};
use crate::zeros::ZeroRecord;
use serde::Serialize;

/// One density tally: zeros with β ≥ σ, ordinate up to T, and multiplicity
/// at least r (or exactly r when `exact_mult`).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityCount {
    pub sigma: f64,
    pub t: f64,
    pub r: u32,
    pub count: u32,
    pub exact_mult: bool,
}

/// Tally the cached zeros. Requires certified multiplicities on every
/// record with ordinate ≤ T. The r = 1 cumulative tally counts zeros with
/// their multiplicities; the cutoff tallies count distinct zeros.
pub fn count_density(
    zeros: &[ZeroRecord],
    sigma: f64,
    t: f64,
    r: u32,
    exact: bool,
) -> Result<DensityCount> {
    if r < 1 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    // Coverage beyond the last cached ordinate cannot be derived from the
    // records; the caller vouches for the scanned range. Prefix
    // completeness (rank 1 first) is checkable and required.
    let first = zeros
        .first()
        .ok_or(Error::CacheCoverage { lo: 0.0, hi: t })?;
    if first.index != 1 {
        return Err(Error::CacheCoverage { lo: 0.0, hi: t });
    }
    let mut count = 0u32;
    for z in zeros.iter().filter(|z| z.gamma <= t && z.beta >= sigma) {
        let m = z.multiplicity.ok_or_else(|| {
            Error::InvalidInput(format!(
                "zero #{} at gamma = {} has no certified multiplicity",
                z.index, z.gamma
            ))
        })?;
        if exact {
            if m == r {
                count += 1;
            }
        } else if m >= r {
            // Cumulative count: weighted by multiplicity in the r = 1 case.
            count += if r == 1 { m } else { 1 };
        }
    }
    Ok(DensityCount {
        sigma,
        t,
        r,
        count,
        exact_mult: exact,
    })
}

/// Reference decay curve N(T)·e^{−C√r} printed next to exact-multiplicity
/// tallies; the constant is configuration, the curve is informational.
pub fn reference_curve(n_t: f64, r: u32, k: &BoundConstants) -> f64 {
    n_t * (-k.o_envelope * (r as f64).sqrt()).exp()
}
