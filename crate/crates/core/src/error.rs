use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} is outside the sieved range (limit {limit})")]
    OutOfRange { what: &'static str, value: String, limit: u64 },

    #[error("series diverges for exponent s = {s} (need s > 1)")]
    DivergentSeries { s: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("guard `{guard}` exceeded: {requested} requested, limit {limit}")]
    ResourceLimit { guard: &'static str, requested: String, limit: u64 },

    #[error("root not bracketed on [{lo}, {hi}]: log-sum {lo_value} at lo, {hi_value} at hi")]
    NotBracketed { lo: f64, hi: f64, lo_value: f64, hi_value: f64 },

    #[error("undefined exponent: every sample in the window {0} was skipped")]
    UndefinedExponent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("construction infeasible: inequality `{inequality}` fails ({detail})")]
    ConstructionInfeasible { inequality: String, detail: String },

    #[error("construction hole: prime block {block} (slot {slot}) on [{lo}, {hi}] is empty")]
    ConstructionHole { block: usize, slot: usize, lo: f64, hi: f64 },

    #[error("sample {index} could not be certified to depth {depth} after {retries} refinements")]
    SampleFailure { index: usize, depth: usize, retries: u32 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
