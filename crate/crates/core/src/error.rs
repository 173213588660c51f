use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("too many variables: {arity} (max {max})")]
    ArityOverflow { arity: usize, max: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("term cap exceeded ({limit} terms)")]
    TermCap { limit: usize },
    #[error("reduction step budget exceeded ({limit} steps)")]
    StepBudget { limit: usize },
    #[error("staircase box exceeds {limit} cells")]
    BoxCap { limit: usize },
    #[error("quotient has infinite colength")]
    InfiniteColength,
    #[error("theta undefined: ideal not m-primary")]
    NotMPrimary,
    #[error("dimension {n} exceeds the cap of {max}")]
    DimensionCap { n: usize, max: usize },
    #[error("constant input has no singularity")]
    ConstantInput,
    #[error("polynomial does not vanish at the origin")]
    NonVanishing,
    #[error("isolated singularity required: point is smooth")]
    SmoothPoint,
    #[error("isolated singularity required: singular locus is positive dimensional")]
    NonIsolated,
    #[error("polynomial is not quasi-homogeneous")]
    NotQuasiHomogeneous,
    #[error("generator is not a monomial")]
    NonMonomialGenerator,
    #[error("polynomial vanishes identically on the hyperplane")]
    VanishingRestriction,
    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Budget-type failures: the computation was cut off, not refuted.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::TermCap { .. } | Error::StepBudget { .. } | Error::BoxCap { .. })
    }
}
