use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible variable sets: [{left}] vs [{right}]")]
    IncompatibleVars { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },

    #[error("divisor has no invertible constant term")]
    NonUnitDivisor,

    #[error("inexact division by {divisor}: term {monomial} is not divisible")]
    InexactDivision { divisor: String, monomial: String },

    #[error(
        "argument substituted for `{var}` has order {order}, below the weight {weight} of `{var}`"
    )]
    NonNilpotentArgument {
        var: String,
        order: u32,
        weight: u32,
    },

    #[error("expected {expected} substitution arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error(
        "precision exhausted: operation needs bound {needed}, series only known to {available}"
    )]
    PrecisionExhausted { needed: u32, available: u32 },

    #[error("fixed-point iteration for [{unknowns}] stagnated: evaluator returned bound {got} at precision {wanted}")]
    Stagnation {
        unknowns: String,
        wanted: u32,
        got: u32,
    },

    #[error("fixed-point iteration for [{unknowns}] did not settle to bound {bound} after {iterations} iterations")]
    NonConvergence {
        unknowns: String,
        bound: u32,
        iterations: usize,
    },

    #[error("non-integral count for {what}: {value}")]
    NonIntegralCount { what: String, value: String },

    #[error("negative count for {what}: {value}")]
    NegativeCount { what: String, value: String },

    #[error("inconsistent series: {0}")]
    Inconsistent(String),

    #[error("{stage}: {inner}")]
    Stage { stage: String, inner: Box<Error> },
}

impl Error {
    /// The innermost error, with stage attributions stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { inner, .. } => inner.root(),
            other => other,
        }
    }
}

/// Attach the pipeline stage (system and equation line) to an error.
pub trait StageContext<T> {
    fn stage(self, stage: &str) -> Result<T>;
}

impl<T> StageContext<T> for Result<T> {
    fn stage(self, stage: &str) -> Result<T> {
        self.map_err(|inner| Error::Stage {
            stage: stage.to_string(),
            inner: Box::new(inner),
        })
    }
}
