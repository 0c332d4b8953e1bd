//! Error type shared across the crate.

/// Crate-wide error enum. Parameter rejections carry enough detail to name
/// the violated inequality; numerical failures carry the measured quantity.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension must satisfy d >= 2 (got d = {d})")]
    DimensionTooSmall { d: u32 },

    #[error("order must satisfy r > 1/2 (got r = {r})")]
    OrderTooSmall { r: f64 },

    #[error("order must satisfy r < d/2 (got r = {r}, d/2 = {half_d})")]
    OrderVsDimension { r: f64, half_d: f64 },

    #[error("order must satisfy r < S - 1/2 (got r = {r}, S - 1/2 = {bound})")]
    OrderVsRegularity { r: f64, bound: f64 },

    #[error("{what} out of range: {details}")]
    OutOfRange { what: &'static str, details: String },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("grid self-test failed: {0}")]
    GridSelfTest(String),

    #[error("grid mismatch: operation mixes profiles from different grids")]
    GridMismatch,

    #[error("spectral tail not decayed at grid edge (tail/peak = {fraction:.3e})")]
    SpectralTail { fraction: f64 },

    #[error(
        "low-frequency divergence: multiplier power {power} is not integrable in dimension {d}"
    )]
    LowFrequencyDivergence { power: f64, d: u32 },

    #[error("quadrature did not converge: {0}")]
    QuadratureNoConvergence(String),

    #[error("too few usable points: {got} < {need}")]
    TooFewPoints { got: usize, need: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed file: {0}")]
    Parse(String),
}

impl Error {
    /// True when the error is a rejection of caller-supplied parameters
    /// (CLI exit code 2) rather than a numerical failure (exit code 1).
    pub fn is_parameter_rejection(&self) -> bool {
        matches!(
            self,
            Error::DimensionTooSmall { .. }
                | Error::OrderTooSmall { .. }
                | Error::OrderVsDimension { .. }
                | Error::OrderVsRegularity { .. }
                | Error::OutOfRange { .. }
                | Error::DegenerateInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
