use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Cartan matrix is not integral: {0}")]
    NonIntegralCartan(String),
    #[error("root system is not reduced: {0}")]
    NonReducedSystem(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("input is not dominant: {0}")]
    NotDominantInput(String),
    #[error("elements belong to different root data: {0}")]
    DatumMismatch(String),
    #[error("invalid Frobenius datum: {0}")]
    InvalidFrobenius(String),
    #[error("Newton period search overflowed: {0}")]
    PeriodOverflow(String),
    #[error("equal-length class exceeded the node budget of {0}")]
    BallExhausted(usize),
    #[error("enumeration exceeded the budget of {budget} elements ({what})")]
    BudgetExceeded { budget: usize, what: String },
    #[error("parabolic subgroup W_K is infinite for K = {0:?}")]
    InfiniteParabolic(Vec<usize>),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("tag is not in B(G, mu): {0}")]
    TagNotInBGMu(String),
    #[error("extremal element not unique: {0}")]
    ExtremalityViolation(String),
    #[error("operator M - I is singular: {0}")]
    SingularOperator(String),
    #[error("element is not straight: {0}")]
    NotStraight(String),
    #[error("class has support inside K: coefficient {0} is nonzero")]
    SupportViolation(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// The variant name, used as a stable error code in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonIntegralCartan(_) => "NonIntegralCartan",
            Error::NonReducedSystem(_) => "NonReducedSystem",
            Error::UnknownPreset(_) => "UnknownPreset",
            Error::InvalidDatum(_) => "InvalidDatum",
            Error::NotDominantInput(_) => "NotDominantInput",
            Error::DatumMismatch(_) => "DatumMismatch",
            Error::InvalidFrobenius(_) => "InvalidFrobenius",
            Error::PeriodOverflow(_) => "PeriodOverflow",
            Error::BallExhausted(_) => "BallExhausted",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InfiniteParabolic(_) => "InfiniteParabolic",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NoSolution(_) => "NoSolution",
            Error::TagNotInBGMu(_) => "TagNotInBGMu",
            Error::ExtremalityViolation(_) => "ExtremalityViolation",
            Error::SingularOperator(_) => "SingularOperator",
            Error::NotStraight(_) => "NotStraight",
            Error::SupportViolation(_) => "SupportViolation",
        }
    }
}
