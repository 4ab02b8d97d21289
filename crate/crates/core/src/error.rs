//! Error types. Every failure path carries the mathematical reason, with the
//! offending indices and exact values where a validation fails.

use thiserror::Error;

/// One offending coordinate in a validation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// 1-based index of the simple root or coordinate at fault.
    pub index: usize,
    /// Exact value found, rendered canonically.
    pub value: String,
    /// What the value was required to satisfy.
    pub requirement: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "index {}: value {} (requires {})",
            self.index, self.value, self.requirement
        )
    }
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("bad rank: {0}")]
    BadRank(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Weyl group order {order} exceeds the cap {cap}; raise the cap explicitly or set FLAGHEIGHT_MAX_WEYL_ORDER")]
    GroupTooLarge { order: u128, cap: u128 },
    #[error("lambda is not a character of P: {}", join(.0))]
    NotACharacterOfP(Vec<Violation>),
    #[error("lambda is not strictly antidominant: {}", join(.0))]
    NotStrictlyAntidominant(Vec<Violation>),
    #[error("slope vector does not vanish on the Levi of Q: {}", join(.0))]
    SlopeNotLeviTrivial(Vec<Violation>),
    #[error("slope pairings off the Levi of Q must be strictly positive: {}", join(.0))]
    SlopeNotStrictlyDecreasingAcrossBlocks(Vec<Violation>),
    #[error("slopes must strictly decrease across blocks: {0}")]
    NonDecreasingSlopes(String),
    #[error("lambda must be integral: {}", join(.0))]
    NotIntegral(Vec<Violation>),
    #[error("lambda must be weakly increasing: {}", join(.0))]
    NotAntidominant(Vec<Violation>),
    #[error("point lies outside the polytope: {0}")]
    PointOutside(String),
    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("simple root {index} lies in the Levi of P")]
    IndexInLevi { index: usize },
    #[error("k = {k} is out of range; the valid range is 1..={max}")]
    InvalidK { k: i64, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
