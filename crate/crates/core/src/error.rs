use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by all evaluation and certification paths.
#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation point ({re}, {im}) is within {dist:e} of a pole")]
    Pole { re: f64, im: f64, dist: f64 },

    #[error("requested accuracy {requested:e} unreachable (achievable {achievable:e})")]
    PrecisionUnreachable { requested: f64, achievable: f64 },

    #[error("quadrature did not converge after {nodes} nodes (residual {residual:e})")]
    QuadratureNonConvergence { nodes: usize, residual: f64 },

    #[error("contour radius {radius} too large: circle hits a singularity")]
    RadiusTooLarge { radius: f64 },

    #[error("imaginary residue {residue:e} exceeds precision threshold")]
    PrecisionFailure { residue: f64 },

    #[error("path passes within {dist:e} of a zero near t = {t}; argument tracking ill-defined")]
    NearZeroOnPath { t: f64, dist: f64 },

    #[error("zero count mismatch on [{lo}, {hi}]: found {found}, formula expects {expected}")]
    CountMismatch {
        lo: f64,
        hi: f64,
        found: usize,
        expected: i64,
    },

    #[error("zero cache does not cover [{lo}, {hi}]")]
    CacheCoverage { lo: f64, hi: f64 },

    #[error("node cap {cap} reached with winding residual {residual:e}; certificate refused")]
    NodeCapReached { cap: usize, residual: f64 },

    #[error("cannot isolate the target zero above the minimum radius {min_radius:e}")]
    IsolationUnobtainable { min_radius: f64 },

    #[error("truncation envelope {envelope:e} exceeds tolerance {tolerance:e}")]
    EnvelopeExceedsTolerance { envelope: f64, tolerance: f64 },

    #[error("no valid exponent constant c in the search window")]
    NoValidC,

    #[error("memory budget exceeded: table of {requested} entries (cap {cap})")]
    MemoryBudget { requested: usize, cap: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("cache parse error at line {line}: {message}")]
    CacheParse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code for CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "pole",
            Error::PrecisionUnreachable { .. } => "precision_unreachable",
            Error::QuadratureNonConvergence { .. } => "quadrature_non_convergence",
            Error::RadiusTooLarge { .. } => "radius_too_large",
            Error::PrecisionFailure { .. } => "precision_failure",
            Error::NearZeroOnPath { .. } => "near_zero_on_path",
            Error::CountMismatch { .. } => "count_mismatch",
            Error::CacheCoverage { .. } => "cache_coverage",
            Error::NodeCapReached { .. } => "node_cap_reached",
            Error::IsolationUnobtainable { .. } => "isolation_unobtainable",
            Error::EnvelopeExceedsTolerance { .. } => "envelope_exceeds_tolerance",
            Error::NoValidC => "no_valid_c",
            Error::MemoryBudget { .. } => "memory_budget",
            Error::InvalidInput(_) => "invalid_input",
            Error::CacheParse { .. } => "cache_parse",
            Error::Io(_) => "io",
        }
    }
}
