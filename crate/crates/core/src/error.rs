use num_bigint::BigInt;
use thiserror::Error;

use crate::groupring::GroupId;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("triple product left the Eisenstein subring: {0}")]
    NotInSubring(String),

    #[error("factorization of {n} did not finish; partial factors {partial:?}, unfactored cofactor {cofactor}")]
    FactorizationFailed {
        n: BigInt,
        partial: Vec<(BigInt, u32)>,
        cofactor: BigInt,
    },

    #[error("no representation found: {0}")]
    NotRepresentable(String),

    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(GroupId, GroupId),

    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("malformed expression: {0}")]
    MalformedExpression(String),

    #[error("verification failed for {family}: claimed {claimed}, computed {computed}")]
    VerificationFailed {
        family: String,
        claimed: BigInt,
        computed: BigInt,
    },

    #[error("{d} is not a group determinant of {group}")]
    NotAMember { d: BigInt, group: GroupId },

    #[error("witness search for {target} exhausted its budget of {budget} candidates")]
    WitnessSearchExhausted { target: BigInt, budget: u64 },

    #[error("audit violation: {0}")]
    AuditViolation(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NotInSubring(_) => "NotInSubring",
            Error::FactorizationFailed { .. } => "FactorizationFailed",
            Error::NotRepresentable(_) => "NotRepresentable",
            Error::GroupMismatch(..) => "GroupMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::MalformedExpression(_) => "MalformedExpression",
            Error::VerificationFailed { .. } => "VerificationFailed",
            Error::NotAMember { .. } => "NotAMember",
            Error::WitnessSearchExhausted { .. } => "WitnessSearchExhausted",
            Error::AuditViolation(_) => "AuditViolation",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
