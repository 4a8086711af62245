use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("probability out of range [0, 1]: {0}")]
    InvalidProbability(String),
    #[error("negative weight for label {0:?}")]
    NegativeWeight(String),
    #[error("every weight is zero")]
    AllZeroWeights,
    #[error("both likelihoods are zero")]
    BothZero,
    #[error("indeterminate update: zero prior odds times an infinite factor")]
    Indeterminate,
    #[error("evidence is impossible under every hypothesis")]
    ImpossibleEvidence,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("distribution does not sum to one (sum = {0})")]
    NotNormalized(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("unknown hypothesis {0:?}")]
    UnknownHypothesis(String),
    #[error("unknown outcome {0:?}")]
    UnknownOutcome(String),
    #[error("unknown hat color {0:?}")]
    UnknownHatColor(String),
    #[error("labels do not match the scenario hypotheses")]
    LabelMismatch,
    #[error("odds cannot be zero to zero")]
    ZeroOdds,
    #[error("no candidate compositions")]
    EmptyCandidates,
    #[error("every hypothesis was excluded by the observed colors")]
    NothingLeft,
    #[error("scenario has no second layer")]
    NoSecondLayer,
    #[error("successes ({x}) exceed trials ({n})")]
    XExceedsN { x: u64, n: u64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
