use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient {name} is not finite ({value})")]
    NonFiniteInput { name: &'static str, value: f64 },

    #[error("exponent must be a finite real >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("the zero form has no Littlewood ratio")]
    ZeroForm,

    #[error("form is an extreme point of the unit ball and cannot be split")]
    IsExtreme,

    #[error("form lies outside the closed unit ball (norm {0})")]
    OutsideBall(f64),

    #[error("functional requested for a form that is not an extreme point")]
    NotExtremePoint,

    #[error("no valid split witness found")]
    WitnessNotFound,

    #[error("the uncovered complex case has no proven bound")]
    UncoveredCase,

    #[error("quadruple violates a, b, c > 0 and d < 0")]
    InvalidRegion,

    #[error("lemma hypothesis not met: {0}")]
    HypothesisNotMet(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
