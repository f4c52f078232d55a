//! Per-subcommand logic. Each command returns its JSON data payload; the
//! renderers in `output` turn that into CSV or tables when requested.

use crate::config::RunConfig;
use serde_json::{json, Value};
use zmlab_core::bounds::{
    classical_bound, crossover_beta, fm_series, levinson_bracket, levinson_params, measure_max,
    measure_max_line, thm1_bound, thm2_bound, thm2_optimize_c, thm3_beta_ceiling, thm3_mult_bound,
    thm4_beta_ceiling, thm4_mult_ceiling, BoundReport,
};
use zmlab_core::density::{count_density, reference_curve};
use zmlab_core::error::{Error, Result};
use zmlab_core::eval::SPoint;
use zmlab_core::kernel::{fr_closed_form, fr_mellin, fr_ode, KernelValue};
use zmlab_core::mollifier::{b_coeffs, mellin_identity_check, mollifier_build};
use zmlab_core::multiplicity::{
    certify_multiplicity, ell_reference_form, jensen_probe, moment_mult_bound, MomentBoundInput,
};
use zmlab_core::zeros::{load_cache, save_cache, scan_zeros, window_mult_bound, ZeroRecord};

fn report_json(r: &BoundReport) -> Value {
    serde_json::to_value(r).expect("bound reports serialize")
}

fn kernel_json(v: &KernelValue) -> Value {
    serde_json::to_value(v).expect("kernel values serialize")
}

pub fn zeros_records(t_max: f64, step: f64) -> Result<Vec<ZeroRecord>> {
    scan_zeros(2.0, t_max, step)
}

pub fn zeros_json(records: &[ZeroRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|z| {
                json!({
                    "index": z.index,
                    "gamma": z.gamma,
                    "beta": z.beta,
                    "multiplicity": z.multiplicity,
                    "cert_radius": z.cert_radius,
                    "cert_residual": z.cert_residual,
                    "loc_error": z.loc_error,
                })
            })
            .collect(),
    )
}

pub fn run_certify(
    config: &RunConfig,
    gamma: Option<f64>,
    radius: f64,
    all: bool,
    update_cache: bool,
) -> Result<Value> {
    let mut zeros = load_cache(&config.cache_path).map_err(|e| match e {
        Error::Io(_) => Error::InvalidInput(format!(
            "cache missing: {} (run `zmlab zeros --t-max <T> --out <path>` first)",
            config.cache_path.display()
        )),
        other => other,
    })?;
    let targets: Vec<usize> = if all {
        (0..zeros.len()).collect()
    } else {
        let g = gamma.ok_or_else(|| {
            Error::InvalidInput("either --gamma or --all must be supplied".into())
        })?;
        let (i, nearest) = zeros
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1.gamma - g)
                    .abs()
                    .partial_cmp(&(b.1.gamma - g).abs())
                    .unwrap()
            })
            .ok_or(Error::CacheCoverage { lo: g, hi: g })?;
        if (nearest.gamma - g).abs() > 0.5 {
            return Err(Error::InvalidInput(format!(
                "no cached ordinate within 0.5 of gamma = {g}"
            )));
        }
        vec![i]
    };
    let mut out = Vec::new();
    for i in targets {
        let rho = SPoint::new(zeros[i].beta, zeros[i].gamma)?;
        let cert = certify_multiplicity(rho, radius, &zeros)?;
        zeros[i].multiplicity = Some(cert.multiplicity);
        zeros[i].cert_radius = Some(cert.radius);
        zeros[i].cert_residual = Some(cert.winding_residual);
        out.push(json!({
            "index": zeros[i].index,
            "gamma": zeros[i].gamma,
            "beta": zeros[i].beta,
            "multiplicity": cert.multiplicity,
            "radius": cert.radius,
            "winding_residual": cert.winding_residual,
            "nodes": cert.nodes,
        }));
    }
    if update_cache {
        save_cache(&config.cache_path, &zeros)?;
    }
    Ok(Value::Array(out))
}

pub fn run_jensen(config: &RunConfig, gamma: f64, radius: f64) -> Result<Value> {
    let zeros = load_cache(&config.cache_path).unwrap_or_default();
    let (lhs, rhs) = jensen_probe(gamma, radius, &zeros)?;
    Ok(json!({
        "gamma": gamma,
        "radius": radius,
        "lhs": lhs,
        "rhs": rhs,
        "gap": (lhs - rhs).abs(),
        "cached_zeros_considered": zeros.len(),
    }))
}

#[allow(clippy::too_many_arguments)]
pub fn run_moment_bound(
    beta: f64,
    gamma: f64,
    delta: f64,
    k: u32,
    ell: Option<f64>,
    ell_form: Option<f64>,
    o1_const: f64,
) -> Result<Value> {
    let ell = match (ell, ell_form) {
        (Some(l), None) => l,
        (None, Some(a)) => ell_reference_form(gamma, delta, a),
        (None, None) => {
            return Err(Error::InvalidInput(
                "one of --ell or --ell-form must be supplied".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(Error::InvalidInput(
                "--ell and --ell-form are mutually exclusive".into(),
            ))
        }
    };
    let input = MomentBoundInput {
        beta,
        gamma,
        delta,
        k,
        ell,
        o1_const,
    };
    let report = moment_mult_bound(&input)?;
    Ok(report_json(&report))
}

pub struct BoundArgs {
    pub beta: f64,
    pub gamma: f64,
    pub c: Option<f64>,
    pub optimize_c: bool,
    pub r: Option<f64>,
    pub max_log_zeta: Option<f64>,
    pub m_log: Option<f64>,
    pub grid: usize,
}

pub fn run_bounds(config: &RunConfig, which: &str, args: &BoundArgs) -> Result<Value> {
    let k = &config.constants;
    let report = match which {
        "thm1" => {
            let max_log = match args.max_log_zeta {
                Some(v) => v,
                None => measure_max(args.gamma, 0.5, 0.5, args.grid)?,
            };
            let r = thm1_bound(args.beta, args.gamma, max_log, k)?;
            require_valid(r)?
        }
        "thm2" => {
            let m_log = match args.m_log {
                Some(v) => v,
                None => {
                    let half_width = args.gamma.ln().powi(2).min(args.gamma - 2.0);
                    measure_max_line(args.gamma, half_width, args.grid)?
                }
            };
            let r = if args.optimize_c {
                thm2_optimize_c(args.beta, args.gamma, m_log, k)?
            } else {
                let c = args.c.unwrap_or(1.5 - args.beta);
                thm2_bound(args.beta, args.gamma, c, m_log, k)?
            };
            require_valid(r)?
        }
        "thm3" => {
            let mult = thm3_mult_bound(args.beta, args.gamma, k)?;
            let mut v = require_valid(mult)?;
            if let Some(r) = args.r {
                let ceiling = thm3_beta_ceiling(r.round() as u32, args.gamma, k)?;
                v["beta_ceiling"] = report_json(&ceiling);
            }
            return Ok(v);
        }
        "thm4" => {
            let mult = thm4_mult_ceiling(args.beta, args.gamma, k)?;
            let mut v = require_valid(mult)?;
            if let Some(r) = args.r {
                let ceiling = thm4_beta_ceiling(r, args.gamma, k)?;
                v["beta_ceiling"] = report_json(&ceiling);
            }
            let (m_big, sigma) = levinson_params(args.gamma, args.beta)?;
            v["levinson_m"] = json!(m_big);
            v["levinson_sigma"] = json!(sigma);
            if let Some(r) = args.r {
                v["levinson_bracket"] = json!(levinson_bracket(r, m_big));
            }
            return Ok(v);
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown bound family {other:?} (expected thm1, thm2, thm3 or thm4)"
            )))
        }
    };
    Ok(report)
}

fn require_valid(report: BoundReport) -> Result<Value> {
    if !report.valid {
        return Err(Error::InvalidInput(report.notes));
    }
    Ok(report_json(&report))
}

pub fn run_fm(sigma: f64, t: f64, m: u32, n_max: usize) -> Result<Value> {
    let fm = fm_series(sigma, t, m, n_max)?;
    Ok(json!({
        "sigma": sigma,
        "t": t,
        "m": m,
        "n_max": n_max,
        "value_re": fm.value.re,
        "value_im": fm.value.im,
        "tail_envelope": fm.tail_envelope,
    }))
}

pub fn run_kernel(r: u32, x: f64, method: &str, c: f64, t_cut: f64) -> Result<Value> {
    let rows: Vec<KernelValue> = match method {
        "mellin" => vec![fr_mellin(r, x, c, t_cut)?],
        "closed" => vec![fr_closed_form(r, x)?],
        "ode" => vec![fr_ode(r, x)?],
        "all" => vec![
            fr_mellin(r, x, c, t_cut)?,
            fr_closed_form(r, x)?,
            fr_ode(r, x)?,
        ],
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown method {other:?} (expected mellin, closed, ode or all)"
            )))
        }
    };
    Ok(Value::Array(rows.iter().map(kernel_json).collect()))
}

pub fn run_mollifier(
    x: f64,
    n_max: usize,
    dump: Option<&std::path::Path>,
    y: Option<f64>,
    r: u32,
) -> Result<Value> {
    let table = mollifier_build(x, n_max)?;
    if let Some(path) = dump {
        let mut buf = Vec::new();
        table.dump_csv(&mut buf)?;
        std::fs::write(path, buf)?;
    }
    let nonzero = table.a.iter().filter(|&&a| a != 0).count();
    let mut summary = json!({
        "x": x,
        "n_max": n_max,
        "nonzero_coefficients": nonzero,
        "a_1": table.a[1],
        "max_abs_a": table.a.iter().map(|a| a.unsigned_abs()).max().unwrap_or(0),
    });
    if let Some(y) = y {
        let b = b_coeffs(&table, y, r, n_max)?;
        let max_b = b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        summary["max_abs_b"] = json!(max_b);
        summary["smoothing_y"] = json!(y);
        summary["smoothing_r"] = json!(r);
    }
    Ok(summary)
}

#[allow(clippy::too_many_arguments)]
pub fn run_identity_check(
    beta: f64,
    gamma: f64,
    x: f64,
    y: f64,
    r: u32,
    n_max: Option<usize>,
    t_cut: f64,
) -> Result<Value> {
    let rho = SPoint::new(beta, gamma)?;
    let n_max =
        n_max.unwrap_or(((60.0 * y).ceil() as usize).max((2.0 * y * y.ln()).ceil() as usize));
    let chk = mellin_identity_check(rho, x, y, r, n_max, t_cut)?;
    Ok(serde_json::to_value(chk).expect("identity check serializes"))
}

pub fn run_density(config: &RunConfig, sigma: f64, t: f64, r: u32, exact: bool) -> Result<Value> {
    let zeros = load_cache(&config.cache_path).map_err(|e| match e {
        Error::Io(_) => Error::InvalidInput(format!(
            "cache missing: {} (run `zmlab zeros` then `zmlab certify --all --update-cache`)",
            config.cache_path.display()
        )),
        other => other,
    })?;
    let count = count_density(&zeros, sigma, t, r, exact)?;
    let mut v = serde_json::to_value(count).expect("density counts serialize");
    if exact {
        let n_t = zeros.iter().filter(|z| z.gamma <= t).count() as f64;
        v["reference_curve"] = json!(reference_curve(n_t, r, &config.constants));
    }
    Ok(v)
}

const REPORT_BETAS: [f64; 5] = [0.6, 0.7, 0.8, 0.9, 0.95];
const REPORT_WINDOW_HALF_WIDTH: f64 = 0.5;

/// One-stop comparison of every bound at a given ordinate: for each
/// hypothetical β, the Jensen-disk, optimized rectangle-contour, both
/// power-law forms, the classical log γ shape, and the trivial window
/// count. Layout is deterministic.
pub fn run_report(config: &RunConfig, gamma: f64) -> Result<Value> {
    let zeros = load_cache(&config.cache_path).map_err(|e| match e {
        Error::Io(_) => Error::InvalidInput(format!(
            "cache missing: {} (run `zmlab zeros --t-max <T> --out <path>` first)",
            config.cache_path.display()
        )),
        other => other,
    })?;
    let k = &config.constants;
    let max_log = measure_max(gamma, 0.5, 0.5, 64)?;
    let line_half_width = gamma.ln().powi(2).min(gamma - 2.0);
    let m_log = measure_max_line(gamma, line_half_width, 64)?;
    let window = window_mult_bound(gamma, REPORT_WINDOW_HALF_WIDTH, &zeros)?;
    let classical = classical_bound(gamma, k)?.value;
    let crossover = crossover_beta();

    let cell = |r: Result<BoundReport>| -> Value {
        match r {
            Ok(rep) if rep.valid => json!(rep.value),
            _ => Value::Null,
        }
    };
    let mut rows = Vec::new();
    for &beta in &REPORT_BETAS {
        rows.push(json!({
            "beta": beta,
            "jensen_disk": cell(thm1_bound(beta, gamma, max_log, k)),
            "contour_opt_c": cell(thm2_optimize_c(beta, gamma, m_log, k)),
            "power_law": cell(thm3_mult_bound(beta, gamma, k)),
            "isolation": cell(thm4_mult_ceiling(beta, gamma, k)),
            "classical_log": classical,
            "window_count": window,
        }));
    }
    Ok(json!({
        "gamma": gamma,
        "max_log_zeta_rect": max_log,
        "max_log_zeta_line": m_log,
        "crossover_beta": crossover,
        "window_half_width": REPORT_WINDOW_HALF_WIDTH,
        "rows": rows,
    }))
}
