//! Critical-line zero location by sign changes of Hardy Z, the zero-count
//! formula N(T) with its oscillating part S(T) tracked by continuous argument
//! variation, and a diff-friendly CSV zero cache.

use crate::error::{Error, Result};
use crate::zeta::{hardy_z, zeta_c};
use crate::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

/// A located (and possibly certified) zero ρ = β + iγ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    /// Ordinate rank, starting at 1 for the lowest positive ordinate.
    pub index: usize,
    pub gamma: f64,
    pub beta: f64,
    pub multiplicity: Option<u32>,
    pub cert_radius: Option<f64>,
    pub cert_residual: Option<f64>,
    pub loc_error: f64,
}

impl ZeroRecord {
    pub fn point(&self) -> Complex {
        Complex::new(self.beta, self.gamma)
    }
}

/// N(T) split into its counted and formula parts.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountWindow {
    pub t: f64,
    /// Count from the zero cache; absent when no cache was supplied.
    pub n_counted: Option<usize>,
    /// Smooth part plus S(T).
    pub n_formula: f64,
    pub s_of_t: f64,
    /// Envelope for the neglected O(1/T) term: `O_INV_T_CONST / T`,
    /// reported and never silently added.
    pub o_inv_t_envelope: f64,
}

/// Configured constant for the O(1/T) envelope of the count formula.
pub const O_INV_T_CONST: f64 = 0.5;

const BISECT_TOL: f64 = 1e-9;
const ARG_STEP_INIT: f64 = 0.25;
const ARG_STEP_MIN: f64 = 1e-8;
const PATH_ZERO_GUARD: f64 = 1e-6;

/// Smooth part of the zero-count formula:
/// (T/2π) log(T/2π) − T/2π + 7/8.
pub fn smooth_count(t: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * x.ln() - x + 0.875
}

/// C (log γ)^{−2/3} (log log γ)^{−1/3}, the width of the zero-free-region
/// scale at height γ. The absolute constant is the caller's configuration;
/// no claim is made about its true value.
pub fn zero_free_delta(gamma: f64, c: f64) -> Result<f64> {
    if gamma < 10.0 {
        return Err(Error::InvalidInput(format!(
            "zero_free_delta requires gamma >= 10, got {gamma}"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "constant must be positive, got {c}"
        )));
    }
    let lg = gamma.ln();
    Ok(c * lg.powf(-2.0 / 3.0) * lg.ln().powf(-1.0 / 3.0))
}

/// S(T) = (1/π) arg ζ(1/2 + iT), the argument obtained by continuous
/// variation along the straight lines joining 2, 2 + iT, 1/2 + iT, starting
/// from arg ζ(2) = 0. Steps are halved until each one changes the argument
/// by less than π/2, so no branch can be lost.
pub fn s_of_t(t: f64) -> Result<f64> {
    if t < 2.0 {
        return Err(Error::InvalidInput(format!(
            "s_of_t requires T >= 2, got {t}"
        )));
    }
    let mut arg = 0.0;
    let a = Complex::new(2.0, 0.0);
    let b = Complex::new(2.0, t);
    let c = Complex::new(0.5, t);
    arg += track_leg(a, b)?;
    arg += track_leg(b, c)?;
    Ok(arg / PI)
}

fn track_leg(from: Complex, to: Complex) -> Result<f64> {
    let total = to - from;
    let len = total.norm();
    if len == 0.0 {
        return Ok(0.0);
    }
    let dir = total / len;
    let mut pos = 0.0;
    let mut val = eval_checked(from)?;
    let mut acc = 0.0;
    let mut step = ARG_STEP_INIT.min(len);
    while pos < len {
        step = step.min(len - pos);
        let next = from + dir * (pos + step);
        let next_val = eval_checked(next)?;
        let delta = (next_val / val).arg();
        if delta.abs() >= PI / 2.0 {
            step *= 0.5;
            if step < ARG_STEP_MIN {
                return Err(Error::NearZeroOnPath {
                    t: next.im,
                    dist: next_val.norm(),
                });
            }
            continue;
        }
        acc += delta;
        pos += step;
        val = next_val;
        step = (step * 2.0).min(ARG_STEP_INIT);
    }
    Ok(acc)
}

fn eval_checked(s: Complex) -> Result<Complex> {
    let v = zeta_c(s, 1e-12)?.value;
    if v.norm() < PATH_ZERO_GUARD {
        return Err(Error::NearZeroOnPath {
            t: s.im,
            dist: v.norm(),
        });
    }
    Ok(v)
}

/// The count formula at T: smooth part plus computed S(T), with the counted
/// value from the supplied cache when available.
pub fn count_formula(t: f64, zeros: Option<&[ZeroRecord]>) -> Result<CountWindow> {
    let s = s_of_t(t)?;
    let n_counted = zeros.map(|zs| zs.iter().filter(|z| z.gamma <= t).count());
    Ok(CountWindow {
        t,
        n_counted,
        n_formula: smooth_count(t) + s,
        s_of_t: s,
        o_inv_t_envelope: O_INV_T_CONST / t,
    })
}

/// Scan [t_min, t_max] for sign changes of Hardy Z on a coarse grid, refine
/// each bracket by bisection to |Δt| ≤ 1e−9, and validate the harvest
/// against the count formula (halving the step locally in any offending
/// sub-interval, at most four times).
pub fn scan_zeros(t_min: f64, t_max: f64, coarse_step: f64) -> Result<Vec<ZeroRecord>> {
    if t_min < 2.0 {
        return Err(Error::InvalidInput(format!(
            "t_min must be >= 2, got {t_min}"
        )));
    }
    if t_max > 1000.0 {
        return Err(Error::InvalidInput(format!(
            "t_max must be <= 1000, got {t_max}"
        )));
    }
    if t_max <= t_min {
        return Err(Error::InvalidInput(format!(
            "empty scan window [{t_min}, {t_max}]"
        )));
    }
    if !(coarse_step > 0.0 && coarse_step <= 0.5) {
        return Err(Error::InvalidInput(format!(
            "coarse_step must lie in (0, 0.5], got {coarse_step}"
        )));
    }

    let mut ordinates = scan_interval(t_min, t_max, coarse_step)?;

    // Validate against the formula count over the scanned window.
    let expected = expected_count(t_min, t_max, &ordinates)?;
    let mut attempt = 0;
    while ordinates.len() as i64 != expected && attempt < 4 {
        attempt += 1;
        let (lo, hi) = offending_interval(t_min, t_max, &ordinates)?;
        let mut rescanned = scan_interval(lo, hi, coarse_step / 2f64.powi(attempt))?;
        ordinates.retain(|&g| g <= lo || g > hi);
        ordinates.append(&mut rescanned);
        ordinates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ordinates.dedup_by(|a, b| (*a - *b).abs() < 10.0 * BISECT_TOL);
    }
    if ordinates.len() as i64 != expected {
        return Err(Error::CountMismatch {
            lo: t_min,
            hi: t_max,
            found: ordinates.len(),
            expected,
        });
    }

    let base_rank = nearest_integer(smooth_count(t_min) + s_of_t(nudged(t_min, &ordinates))?);
    Ok(ordinates
        .into_iter()
        .enumerate()
        .map(|(i, gamma)| ZeroRecord {
            index: base_rank as usize + i + 1,
            gamma,
            beta: 0.5,
            multiplicity: None,
            cert_radius: None,
            cert_residual: None,
            loc_error: BISECT_TOL,
        })
        .collect())
}

/// Grid scan of one interval; sub-intervals are processed concurrently and
/// stitched with a one-step overlap at the chunk boundaries.
fn scan_interval(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    let n = ((hi - lo) / step).ceil() as usize;
    let chunk = (n / rayon::current_num_threads().max(1)).max(16);
    let ranges: Vec<(usize, usize)> = (0..n)
        .step_by(chunk)
        .map(|a| (a, (a + chunk).min(n)))
        .collect();
    let mut found: Vec<f64> = ranges
        .into_par_iter()
        .map(|(a, b)| -> Result<Vec<f64>> {
            let mut local = Vec::new();
            let mut t0 = lo + a as f64 * step;
            let mut z0 = hardy_z(t0)?;
            for k in a..b {
                let t1 = (lo + (k + 1) as f64 * step).min(hi);
                let z1 = hardy_z(t1)?;
                if z0 == 0.0 {
                    local.push(t0);
                } else if z0 * z1 < 0.0 {
                    local.push(bisect_zero(t0, t1, z0)?);
                }
                t0 = t1;
                z0 = z1;
                if t0 >= hi {
                    break;
                }
            }
            Ok(local)
        })
        .collect::<Result<Vec<Vec<f64>>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort_by(|a, b| a.partial_cmp(b).unwrap());
    found.dedup_by(|a, b| (*a - *b).abs() < 10.0 * BISECT_TOL);
    Ok(found)
}

fn bisect_zero(mut lo: f64, mut hi: f64, z_lo: f64) -> Result<f64> {
    let sign_lo = z_lo.signum();
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        let zm = hardy_z(mid)?;
        if zm == 0.0 {
            return Ok(mid);
        }
        if zm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn expected_count(t_min: f64, t_max: f64, ordinates: &[f64]) -> Result<i64> {
    let hi = nearest_integer(smooth_count(t_max) + s_of_t(nudged(t_max, ordinates))?);
    let lo = nearest_integer(smooth_count(t_min) + s_of_t(nudged(t_min, ordinates))?);
    Ok(hi - lo)
}

/// Shift an evaluation height away from any located ordinate so that the
/// argument tracking stays well-defined.
fn nudged(t: f64, ordinates: &[f64]) -> f64 {
    let mut t = t;
    for _ in 0..8 {
        let near = ordinates.iter().any(|&g| (g - t).abs() < 5e-3);
        if !near {
            break;
        }
        t -= 1e-2;
    }
    t.max(2.0)
}

fn nearest_integer(x: f64) -> i64 {
    x.round() as i64
}

/// Binary-search the smallest sub-interval on which the formula count and
/// the scan count disagree.
fn offending_interval(t_min: f64, t_max: f64, ordinates: &[f64]) -> Result<(f64, f64)> {
    let mut lo = t_min;
    let mut hi = t_max;
    for _ in 0..12 {
        if hi - lo < 1.0 {
            break;
        }
        let mid = nudged(0.5 * (lo + hi), ordinates);
        let left_expected = nearest_integer(smooth_count(mid) + s_of_t(mid)?)
            - nearest_integer(smooth_count(lo) + s_of_t(nudged(lo, ordinates))?);
        let left_found = ordinates.iter().filter(|&&g| g > lo && g <= mid).count() as i64;
        if left_found != left_expected {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

/// Count of cached ordinates in (γ−H, γ+H], weighted by multiplicity when
/// multiplicities are set. The trivial window bound on m(β + iγ).
pub fn window_mult_bound(gamma: f64, h: f64, zeros: &[ZeroRecord]) -> Result<u32> {
    if !(h > 0.0) {
        return Err(Error::InvalidInput(format!(
            "window half-width must be positive, got {h}"
        )));
    }
    let lo = gamma - h;
    let hi = gamma + h;
    // Coverage: the cache must reach past the window top and either start at
    // rank 1 (prefix-complete) or start below the window bottom.
    let first = zeros.first().ok_or(Error::CacheCoverage { lo, hi })?;
    let last = zeros.last().ok_or(Error::CacheCoverage { lo, hi })?;
    if last.gamma < hi || (first.index != 1 && first.gamma > lo) {
        return Err(Error::CacheCoverage { lo, hi });
    }
    Ok(zeros
        .iter()
        .filter(|z| z.gamma > lo && z.gamma <= hi)
        .map(|z| z.multiplicity.unwrap_or(1))
        .sum())
}

pub const CACHE_HEADER: &str = "index,gamma,beta,multiplicity,cert_radius,cert_residual,loc_error";

/// Write the zero cache in its canonical CSV layout (unset fields empty).
pub fn write_cache<W: Write>(mut w: W, zeros: &[ZeroRecord]) -> Result<()> {
    writeln!(w, "{CACHE_HEADER}")?;
    for z in zeros {
        writeln!(
            w,
            "{},{:.12},{:.12},{},{},{},{:e}",
            z.index,
            z.gamma,
            z.beta,
            z.multiplicity.map(|m| m.to_string()).unwrap_or_default(),
            z.cert_radius.map(|r| format!("{r:e}")).unwrap_or_default(),
            z.cert_residual
                .map(|r| format!("{r:e}"))
                .unwrap_or_default(),
            z.loc_error,
        )?;
    }
    Ok(())
}

pub fn save_cache(path: &Path, zeros: &[ZeroRecord]) -> Result<()> {
    let mut buf = Vec::new();
    write_cache(&mut buf, zeros)?;
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn load_cache(path: &Path) -> Result<Vec<ZeroRecord>> {
    let text = std::fs::read_to_string(path)?;
    parse_cache(&text)
}

pub fn parse_cache(text: &str) -> Result<Vec<ZeroRecord>> {
    let mut zeros = Vec::new();
    let mut prev_gamma = f64::NEG_INFINITY;
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line.trim() != CACHE_HEADER {
                return Err(Error::CacheParse {
                    line: 1,
                    message: format!("unexpected header {line:?}"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::CacheParse {
                line: i + 1,
                message: format!("expected 7 fields, got {}", fields.len()),
            });
        }
        let parse_f = |s: &str, what: &str| -> Result<f64> {
            s.trim().parse::<f64>().map_err(|e| Error::CacheParse {
                line: i + 1,
                message: format!("{what}: {e}"),
            })
        };
        let opt_f = |s: &str, what: &str| -> Result<Option<f64>> {
            if s.trim().is_empty() {
                Ok(None)
            } else {
                parse_f(s, what).map(Some)
            }
        };
        let record = ZeroRecord {
            index: fields[0].trim().parse().map_err(|e| Error::CacheParse {
                line: i + 1,
                message: format!("index: {e}"),
            })?,
            gamma: parse_f(fields[1], "gamma")?,
            beta: parse_f(fields[2], "beta")?,
            multiplicity: if fields[3].trim().is_empty() {
                None
            } else {
                Some(fields[3].trim().parse().map_err(|e| Error::CacheParse {
                    line: i + 1,
                    message: format!("multiplicity: {e}"),
                })?)
            },
            cert_radius: opt_f(fields[4], "cert_radius")?,
            cert_residual: opt_f(fields[5], "cert_residual")?,
            loc_error: parse_f(fields[6], "loc_error")?,
        };
        if record.gamma <= prev_gamma {
            return Err(Error::CacheParse {
                line: i + 1,
                message: "ordinates must be strictly increasing".into(),
            });
        }
        prev_gamma = record.gamma;
        zeros.push(record);
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA_1: f64 = 14.134725141734694;
    const GAMMA_2: f64 = 21.022039638771555;

    #[test]
    fn small_t_argument_matches_reference() {
        // Reference value computed independently by high-precision argument
        // tracking and cross-checked against N(T) − θ(T)/π − 1.
        let s = s_of_t(2.0).unwrap();
        assert!((s - (-0.1959775829212427)).abs() < 1e-9, "S(2) = {s}");
        assert!(s.abs() < 0.3);
    }

    #[test]
    fn s_jumps_by_one_across_a_zero() {
        // Midway between the first two ordinates vs. slightly past γ₂:
        // the smooth part is continuous, so S must absorb the unit jump.
        let before = s_of_t(17.5).unwrap();
        let after = s_of_t(21.3).unwrap();
        let n_before = (smooth_count(17.5) + before).round();
        let n_after = (smooth_count(21.3) + after).round();
        assert_eq!(n_after - n_before, 1.0);
    }

    #[test]
    fn count_formula_below_first_ordinate() {
        let w = count_formula(14.0, None).unwrap();
        assert!(w.n_formula.abs() < 0.05, "N(14) formula = {}", w.n_formula);
        assert!(w.o_inv_t_envelope > 0.0);
    }

    #[test]
    fn scan_finds_first_two_zeros_below_25() {
        let zs = scan_zeros(2.0, 25.0, 0.2).unwrap();
        assert_eq!(zs.len(), 2);
        assert!((zs[0].gamma - GAMMA_1).abs() < 1e-6);
        assert!((zs[1].gamma - GAMMA_2).abs() < 1e-6);
        assert_eq!(zs[0].index, 1);
        assert_eq!(zs[1].index, 2);
        assert!(zs[0].loc_error <= 1e-6);
    }

    #[test]
    fn scan_below_first_ordinate_is_empty() {
        let zs = scan_zeros(2.0, 10.0, 0.2).unwrap();
        assert!(zs.is_empty());
    }

    #[test]
    fn scan_is_deterministic() {
        let a = scan_zeros(2.0, 30.0, 0.2).unwrap();
        let b = scan_zeros(2.0, 30.0, 0.2).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.gamma.to_bits(), y.gamma.to_bits());
        }
    }

    #[test]
    fn window_bound_counts_cached_ordinates() {
        let zs = scan_zeros(2.0, 30.0, 0.2).unwrap();
        assert_eq!(window_mult_bound(GAMMA_1, 1.0, &zs).unwrap(), 1);
        assert_eq!(window_mult_bound(17.5, 0.5, &zs).unwrap(), 0);
        // Wide window: ordinates 14.13 and 21.02 lie in (4.13, 24.13];
        // the third ordinate 25.01 is outside.
        assert_eq!(window_mult_bound(GAMMA_1, 10.0, &zs).unwrap(), 2);
    }

    #[test]
    fn window_bound_detects_coverage_gap() {
        let zs = scan_zeros(2.0, 30.0, 0.2).unwrap();
        assert!(matches!(
            window_mult_bound(29.9, 1.0, &zs),
            Err(Error::CacheCoverage { .. })
        ));
    }

    #[test]
    fn zero_free_delta_values() {
        // log log γ collapses to 1 at γ = e^e.
        let g = std::f64::consts::E.exp();
        let v = zero_free_delta(g, 1.0).unwrap();
        assert!((v - (-2.0f64 / 3.0).exp()).abs() < 1e-12);
        let v100 = zero_free_delta(100.0, 1.0).unwrap();
        assert!((v100 - 0.3137180473957415).abs() < 1e-12, "{v100}");
        assert!(zero_free_delta(1000.0, 1.0).unwrap() < v100);
    }

    #[test]
    fn cache_round_trip() {
        let mut zs = scan_zeros(2.0, 25.0, 0.2).unwrap();
        zs[0].multiplicity = Some(1);
        zs[0].cert_radius = Some(0.05);
        zs[0].cert_residual = Some(1e-9);
        let mut buf = Vec::new();
        write_cache(&mut buf, &zs).unwrap();
        let parsed = parse_cache(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(parsed.len(), zs.len());
        assert_eq!(parsed[0].multiplicity, Some(1));
        assert!((parsed[0].gamma - zs[0].gamma).abs() < 1e-10);
        assert_eq!(parsed[1].multiplicity, None);
    }

    #[test]
    fn cache_rejects_disorder() {
        let text = format!("{CACHE_HEADER}\n1,21.0,0.5,,,,1e-9\n2,14.0,0.5,,,,1e-9\n");
        assert!(parse_cache(&text).is_err());
    }
}
