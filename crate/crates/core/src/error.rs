use thiserror::Error;

/// Errors raised by the engine.
///
/// Most variants are guards: on Dynkin input they indicate an implementation
/// bug or a falsified structural claim, never a user mistake.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("invalid translation quiver: {0}")]
    InvalidQuiver(String),
    #[error("compatibility-degree reduction did not reach a negative simple root within {0} steps")]
    NoReduction(usize),
    #[error("knitting produced more than {0} vertices")]
    KnittingDiverged(usize),
    #[error("hammock recursion produced a negative value at vertex {0}")]
    NegativeHammock(usize),
    #[error("negative Ext dimension between vertices {0} and {1}")]
    NegativeExt(usize, usize),
    #[error("mesh category did not stabilize within path length {0}")]
    NoStabilization(usize),
    #[error("maximal Ext-orthogonal set of size {found} (expected {expected})")]
    SizeViolation { found: usize, expected: usize },
    #[error("almost complete tilting set has {0} complements (expected 2)")]
    CountViolation(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no power of tau exposes a module-module configuration for {0}")]
    RotationNotFound(String),
    #[error("exchange relation is not divisible by the old variable: {0}")]
    LaurentViolation(String),
    #[error("seed enumeration exceeded the budget of {0} seeds")]
    BudgetExceeded(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
}

impl Error {
    /// Variant name, used by the CLI when reporting domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidType(_) => "InvalidType",
            Error::InvalidOrientation(_) => "InvalidOrientation",
            Error::InvalidRoot(_) => "InvalidRoot",
            Error::InvalidQuiver(_) => "InvalidQuiver",
            Error::NoReduction(_) => "NoReduction",
            Error::KnittingDiverged(_) => "KnittingDiverged",
            Error::NegativeHammock(_) => "NegativeHammock",
            Error::NegativeExt(..) => "NegativeExt",
            Error::NoStabilization(_) => "NoStabilization",
            Error::SizeViolation { .. } => "SizeViolation",
            Error::CountViolation(_) => "CountViolation",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::RotationNotFound(_) => "RotationNotFound",
            Error::LaurentViolation(_) => "LaurentViolation",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
