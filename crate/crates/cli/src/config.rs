//! Run configuration: a flat `name = value` text file, with the path
//! overridable through the `ZMLAB_CONFIG` environment variable.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use zmlab_core::bounds::BoundConstants;
use zmlab_core::error::{Error, Result};

pub const CONFIG_ENV: &str = "ZMLAB_CONFIG";
pub const DEFAULT_CONFIG_PATH: &str = "zmlab.conf";
pub const DEFAULT_CACHE_PATH: &str = "zeros.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(Error::InvalidInput(format!(
                "unknown output format {other:?} (expected json, csv or table)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub constants: BoundConstants,
    pub tolerances: BTreeMap<String, f64>,
    pub cache_path: PathBuf,
    pub output_format: Option<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            constants: BoundConstants::default(),
            tolerances: BTreeMap::new(),
            cache_path: PathBuf::from(DEFAULT_CACHE_PATH),
            output_format: None,
        }
    }
}

impl RunConfig {
    /// Load from the explicit path, else `ZMLAB_CONFIG`, else the default
    /// path when it exists, else built-in defaults.
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let path = explicit
            .map(PathBuf::from)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        match path {
            Some(p) => Self::from_file(&p),
            None => {
                let default = Path::new(DEFAULT_CONFIG_PATH);
                if default.exists() {
                    Self::from_file(default)
                } else {
                    Ok(RunConfig::default())
                }
            }
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut config = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidInput(format!(
                    "config line {}: expected `name = value`",
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse_f = |v: &str| -> Result<f64> {
                v.parse::<f64>()
                    .map_err(|e| Error::InvalidInput(format!("config line {}: {e}", lineno + 1)))
            };
            match key {
                "c_thm1_loglog" => config.constants.c_thm1_loglog = parse_f(value)?,
                "c_thm3" => config.constants.c_thm3 = parse_f(value)?,
                "c2_thm3" => config.constants.c2_thm3 = parse_f(value)?,
                "c_thm4" => config.constants.c_thm4 = parse_f(value)?,
                "o_envelope" => config.constants.o_envelope = parse_f(value)?,
                "cache_path" => config.cache_path = PathBuf::from(value),
                "output_format" => config.output_format = Some(OutputFormat::parse(value)?),
                _ => {
                    if let Some(name) = key.strip_prefix("tol.") {
                        let v = parse_f(value)?;
                        if !(v > 0.0) {
                            return Err(Error::InvalidInput(format!(
                                "config line {}: tolerance must be positive",
                                lineno + 1
                            )));
                        }
                        config.tolerances.insert(name.to_string(), v);
                    } else {
                        return Err(Error::InvalidInput(format!(
                            "config line {}: unknown key {key:?}",
                            lineno + 1
                        )));
                    }
                }
            }
        }
        config.constants.validate()?;
        Ok(config)
    }
}
