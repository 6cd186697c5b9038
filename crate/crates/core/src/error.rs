use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("domain error: {0}")]
    DomainError(String),

    #[error("root solver: no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("root solver: no convergence, best bracket [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64 },

    #[error("laurent: variable mismatch")]
    VarMismatch,
    #[error("laurent: nonzero x^-1 coefficient {coeff:e} (relative {relative:e})")]
    ResidueTerm { coeff: f64, relative: f64 },
    #[error("laurent: evaluation at zero")]
    ZeroArgument,

    #[error("coefficients: alpha = {0} outside [0, 1 - delta]")]
    AlphaOutOfRange(f64),
    #[error("coefficients: {0}")]
    StructureViolation(String),
    #[error("coefficients: imaginary residue ratio {ratio:e} exceeds 1e-10")]
    ImaginaryResidue { ratio: f64 },
    #[error("coefficients: point t = {t} is within the turning-point radius")]
    NearTurningPoint { t: f64 },
    #[error("coefficients: n_terms = {n} not in [1, {max}]")]
    TermsOutOfRange { n: usize, max: usize },
    #[error("turning-point fallback: precision exhausted ({needed:.1} digits of cancellation, {available} available)")]
    PrecisionExhausted { needed: f64, available: u32 },
    #[error("turning-point fallback: cross-check failed: {0}")]
    CrossCheckFailed(String),

    #[error("mapping: solve failure: {0}")]
    SolveFailure(String),
    #[error("mapping: t = {0} is the singular point t = 1")]
    SingularPoint(f64),
    #[error("mapping: series fit failure: {0}")]
    FitFailure(String),

    #[error("bessel: overflow")]
    Overflow,
    #[error("bessel: no convergence in {0}")]
    BesselNoConvergence(&'static str),

    #[error("oracle: order mu = {0} is too close to an integer")]
    NearIntegerOrder(f64),
    #[error("oracle: parameter pole: {0}")]
    ParameterPole(String),
    #[error("oracle: no zero of Q found on (0, 1)")]
    ZeroNotFound,
}

impl Error {
    /// Pipeline stage the error originates from.
    pub fn stage(&self) -> &'static str {
        use Error::*;
        match self {
            InvalidPrecision(_) | InvalidParams(_) | DomainError(_) => "input",
            NoSignChange { .. } | NoConvergence { .. } => "root solver",
            VarMismatch | ResidueTerm { .. } | ZeroArgument => "laurent",
            AlphaOutOfRange(_)
            | StructureViolation(_)
            | ImaginaryResidue { .. }
            | NearTurningPoint { .. }
            | TermsOutOfRange { .. } => "coefficients",
            PrecisionExhausted { .. } | CrossCheckFailed(_) => "turning-point fallback",
            SolveFailure(_) | SingularPoint(_) | FitFailure(_) => "mapping",
            Overflow | BesselNoConvergence(_) => "bessel",
            NearIntegerOrder(_) | ParameterPole(_) | ZeroNotFound => "oracle",
        }
    }
}
