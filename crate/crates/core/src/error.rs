use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid function: {0}")]
    InvalidFunction(String),

    /// Quadrature of `1/g` on `[0, upper]` did not converge.
    #[error("barrier integral on [0, {upper}] failed to converge (estimated error {error:e}); is 1/g integrable at 0?")]
    DivergentIntegral { upper: f64, error: f64 },

    #[error("malformed samples: {0}")]
    MalformedSamples(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("vertex enumeration in dimension {dim} exceeds the cap of {cap}")]
    DimensionOverflow { dim: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("difference quotients leave the domain of V at t={t}, x={x:?}")]
    EvaluationDomain { t: f64, x: Vec<f64> },

    #[error("strong mode requires V to be locally Lipschitz continuous; the candidate is not flagged as such")]
    MissingLipschitz,

    #[error("no basin: {0}")]
    NoBasin(String),

    #[error("trajectory blew up at t={t}: |x|={norm:e} exceeds the growth-envelope bound {bound:e}")]
    BlowUp { t: f64, norm: f64, bound: f64 },

    #[error("step control stalled at t={t} (step {step:e})")]
    StepStall { t: f64, step: f64 },

    #[error("trajectory did not settle")]
    Unsettled,

    #[error("settling certificate is unbounded")]
    UnboundedCertificate,

    #[error("assumption violated: {inequality} at t={t}, x={x:?} (lhs {lhs:e}, rhs {rhs:e})")]
    AssumptionViolation {
        inequality: String,
        t: f64,
        x: Vec<f64>,
        lhs: f64,
        rhs: f64,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
