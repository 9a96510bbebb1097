use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("sequence must be normalized with c1 = 1, found c1 = {0}")]
    Normalization(String),

    #[error("{what} = {value} is outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: String,
        domain: &'static str,
    },

    #[error("no real root with |x| < 1 ({context})")]
    NoQualifyingRoot { context: String },

    #[error("no convergence after {sweeps} sweeps while solving for c_{harmonic}")]
    NonConvergence { sweeps: usize, harmonic: usize },

    #[error("bracket error: {0}")]
    Bracket(String),

    #[error("resonance: diagonal harmonic ({n},{n}) has residual {magnitude} above {tolerance}; no periodic correction exists")]
    Resonance {
        n: usize,
        magnitude: String,
        tolerance: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
