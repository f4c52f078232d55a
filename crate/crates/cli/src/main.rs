//! Command-line entry point: every laboratory operation behind one binary,
//! with JSON/CSV/table output, a flat-file configuration, and a persistent
//! zero cache. Exit codes: 0 success, 1 computation failure (machine-
//! readable error object in JSON mode), 2 usage error.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use commands::BoundArgs;
use config::{OutputFormat, RunConfig};
use serde_json::Value;
use std::path::PathBuf;
use zmlab_core::error::{Error, Result};
use zmlab_core::zeros::{save_cache, write_cache};

#[derive(Parser)]
#[command(
    name = "zmlab",
    version,
    about = "Numerical laboratory for Riemann zeta zeros: location, multiplicity certification, and multiplicity bounds"
)]
struct Cli {
    /// Output format: json, csv or table (default: per-command).
    #[arg(long, global = true)]
    format: Option<String>,

    /// Configuration file (flat `name = value`); ZMLAB_CONFIG overrides.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Zero-cache CSV path (overrides the configured cache_path).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate critical-line zeros up to a height by Hardy Z sign changes.
    Zeros {
        /// Upper scan height T (zeros with 0 < ordinate <= T), at most 1000.
        #[arg(long = "t-max")]
        t_max: f64,
        /// Coarse grid step for the sign scan (at most 0.5).
        #[arg(long, default_value_t = 0.2)]
        step: f64,
        /// Write the cache CSV here in addition to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Certify zero multiplicities by the argument-principle winding count.
    Certify {
        /// Ordinate of the cached zero to certify.
        #[arg(long)]
        gamma: Option<f64>,
        /// Contour radius (auto-shrunk to isolate the zero).
        #[arg(long, default_value_t = 0.05)]
        radius: f64,
        /// Certify every cached zero.
        #[arg(long)]
        all: bool,
        /// Write certified multiplicities back into the cache.
        #[arg(long = "update-cache")]
        update_cache: bool,
    },

    /// Compare both sides of the Jensen disk identity centred at 1 + i*gamma.
    Jensen {
        #[arg(long)]
        gamma: f64,
        /// Disk radius.
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
    },

    /// Multiplicity bound from a lower bound on the short moment integral.
    #[command(name = "moment-bound")]
    MomentBound {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        /// Window parameter of the moment integral (the integral hypothesis
        /// needs delta < 1/4; the formula accepts (0, 1)).
        #[arg(long)]
        delta: f64,
        /// Moment power, 1 or 2.
        #[arg(long)]
        k: u32,
        /// Lower bound for the moment integral.
        #[arg(long)]
        ell: Option<f64>,
        /// Use the reference shape delta * gamma^(-A/delta) with this A.
        #[arg(long = "ell-form")]
        ell_form: Option<f64>,
        /// Stand-in for the unspecified O(1) term.
        #[arg(long = "o1-const", default_value_t = 0.0)]
        o1_const: f64,
    },

    /// Evaluate a multiplicity bound family at hypothetical (beta, gamma).
    Bounds {
        /// Bound family: thm1 (Jensen disk), thm2 (rectangle contour with
        /// exponent constant c), thm3 (power law), thm4 (isolation ceiling).
        family: String,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        /// Exponent constant c of the rectangle-contour bound.
        #[arg(long)]
        c: Option<f64>,
        /// Minimize the rectangle-contour bound over c.
        #[arg(long = "optimize-c")]
        optimize_c: bool,
        /// Hypothetical multiplicity for the location-ceiling forms.
        #[arg(long)]
        r: Option<f64>,
        /// Override the measured rectangle maximum of log |zeta|.
        #[arg(long = "max-log-zeta")]
        max_log_zeta: Option<f64>,
        /// Override the measured critical-line maximum of log |zeta|.
        #[arg(long = "m-log")]
        m_log: Option<f64>,
        /// Grid resolution for the measured maxima.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Constants file (same flat format as the main configuration).
        #[arg(long)]
        constants: Option<PathBuf>,
    },

    /// Truncated prime-power series with its tail envelope.
    Fm {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
        #[arg(long = "n-max", default_value_t = 100_000)]
        n_max: usize,
    },

    /// Evaluate the smoothing kernel by one or all of its three methods.
    Kernel {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        x: f64,
        /// mellin, closed, ode or all.
        #[arg(long, default_value = "all")]
        method: String,
        /// Contour abscissa for the inverse-Mellin route (c >= 1).
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Truncation height for the inverse-Mellin route.
        #[arg(long = "t-cut", default_value_t = 60.0)]
        t_cut: f64,
    },

    /// Build the Möbius mollifier table (and optionally dump it as CSV).
    Mollifier {
        #[arg(long = "X")]
        x: f64,
        #[arg(long = "n-max")]
        n_max: usize,
        /// Write `n,mu,d,a` rows to this path.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Also compute smoothed coefficients with this Y.
        #[arg(long = "Y")]
        y: Option<f64>,
        /// Kernel order for the smoothed coefficients.
        #[arg(long, default_value_t = 1)]
        r: u32,
    },

    /// Check the smoothed-series identity: direct summation vs the
    /// vertical-line integral, both computed independently.
    #[command(name = "identity-check")]
    IdentityCheck {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long = "X")]
        x: f64,
        #[arg(long = "Y")]
        y: f64,
        #[arg(long = "R")]
        r: u32,
        /// Series truncation (default max(60 Y, 2 Y log Y)).
        #[arg(long = "n-max")]
        n_max: Option<usize>,
        #[arg(long = "t-cut", default_value_t = 60.0)]
        t_cut: f64,
    },

    /// Tally cached zeros by real part, height and certified multiplicity.
    Density {
        #[arg(long)]
        sigma: f64,
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        r: u32,
        /// Count zeros with multiplicity exactly r (default: at least r).
        #[arg(long)]
        exact: bool,
    },

    /// One-stop table of every bound at an ordinate for hypothetical betas.
    Report {
        #[arg(long)]
        gamma: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let command_name = command_name(&cli.command);
    let format = match cli.format.as_deref().map(OutputFormat::parse).transpose() {
        Ok(f) => f,
        Err(e) => return emit_error(command_name, &e, Some(OutputFormat::Table)),
    };
    let config = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => return emit_error(command_name, &e, format),
    };
    let default_format = match cli.command {
        Command::Zeros { .. } => OutputFormat::Csv,
        _ => OutputFormat::Table,
    };
    let format = format.or(config.output_format).unwrap_or(default_format);
    match dispatch(&cli.command, &config) {
        Ok(data) => {
            emit_ok(command_name, &data, format);
            0
        }
        Err(e) => emit_error(command_name, &e, Some(format)),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::load(cli.config.as_deref())?;
    if let Some(cache) = &cli.cache {
        config.cache_path = cache.clone();
    }
    if let Command::Bounds {
        constants: Some(path),
        ..
    } = &cli.command
    {
        let overlay = RunConfig::from_file(path)?;
        config.constants = overlay.constants;
    }
    Ok(config)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Zeros { .. } => "zeros",
        Command::Certify { .. } => "certify",
        Command::Jensen { .. } => "jensen",
        Command::MomentBound { .. } => "moment-bound",
        Command::Bounds { .. } => "bounds",
        Command::Fm { .. } => "fm",
        Command::Kernel { .. } => "kernel",
        Command::Mollifier { .. } => "mollifier",
        Command::IdentityCheck { .. } => "identity-check",
        Command::Density { .. } => "density",
        Command::Report { .. } => "report",
    }
}

fn dispatch(command: &Command, config: &RunConfig) -> Result<Value> {
    match command {
        Command::Zeros { t_max, step, out } => {
            let records = commands::zeros_records(*t_max, *step)?;
            if let Some(path) = out {
                save_cache(path, &records)?;
            }
            // Keep the canonical cache text alongside the generic payload so
            // CSV mode can emit the exact cache format.
            let mut buf = Vec::new();
            write_cache(&mut buf, &records)?;
            let mut data = commands::zeros_json(&records);
            if let Value::Array(_) = data {
                data = serde_json::json!({
                    "records": data,
                    "cache_csv": String::from_utf8(buf).unwrap(),
                });
            }
            Ok(data)
        }
        Command::Certify {
            gamma,
            radius,
            all,
            update_cache,
        } => commands::run_certify(config, *gamma, *radius, *all, *update_cache),
        Command::Jensen { gamma, radius } => commands::run_jensen(config, *gamma, *radius),
        Command::MomentBound {
            beta,
            gamma,
            delta,
            k,
            ell,
            ell_form,
            o1_const,
        } => commands::run_moment_bound(*beta, *gamma, *delta, *k, *ell, *ell_form, *o1_const),
        Command::Bounds {
            family,
            beta,
            gamma,
            c,
            optimize_c,
            r,
            max_log_zeta,
            m_log,
            grid,
            constants: _,
        } => {
            let args = BoundArgs {
                beta: *beta,
                gamma: *gamma,
                c: *c,
                optimize_c: *optimize_c,
                r: *r,
                max_log_zeta: *max_log_zeta,
                m_log: *m_log,
                grid: *grid,
            };
            commands::run_bounds(config, family, &args)
        }
        Command::Fm { m, sigma, t, n_max } => commands::run_fm(*sigma, *t, *m, *n_max),
        Command::Kernel {
            r,
            x,
            method,
            c,
            t_cut,
        } => commands::run_kernel(*r, *x, method, *c, *t_cut),
        Command::Mollifier {
            x,
            n_max,
            dump,
            y,
            r,
        } => commands::run_mollifier(*x, *n_max, dump.as_deref(), *y, *r),
        Command::IdentityCheck {
            beta,
            gamma,
            x,
            y,
            r,
            n_max,
            t_cut,
        } => commands::run_identity_check(*beta, *gamma, *x, *y, *r, *n_max, *t_cut),
        Command::Density { sigma, t, r, exact } => {
            commands::run_density(config, *sigma, *t, *r, *exact)
        }
        Command::Report { gamma } => commands::run_report(config, *gamma),
    }
}

fn emit_ok(command: &str, data: &Value, format: OutputFormat) {
    // The zeros payload carries its canonical cache text for CSV mode.
    if command == "zeros" {
        match format {
            OutputFormat::Csv => {
                if let Some(Value::String(csv)) = data.get("cache_csv") {
                    print!("{csv}");
                    return;
                }
            }
            OutputFormat::Json => {
                let records = data.get("records").cloned().unwrap_or_default();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&output::json_ok(command, records)).unwrap()
                );
                return;
            }
            OutputFormat::Table => {
                if let Some(records) = data.get("records") {
                    print!("{}", output::to_table(records));
                    return;
                }
            }
        }
    }
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&output::json_ok(command, data.clone())).unwrap()
        ),
        OutputFormat::Csv => print!("{}", output::to_csv(data)),
        OutputFormat::Table => print!("{}", output::to_table(data)),
    }
}

fn emit_error(command: &str, err: &Error, format: Option<OutputFormat>) -> i32 {
    match format {
        Some(OutputFormat::Json) => println!(
            "{}",
            serde_json::to_string_pretty(&output::json_error(command, err)).unwrap()
        ),
        _ => eprintln!("error: {err}"),
    }
    1
}
