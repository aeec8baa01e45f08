//! Crate-wide error and result types.

use thiserror::Error;

/// Which configurable budget was exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetKind {
    /// Nodes explored while enumerating partitions of sub-arrangements.
    PartitionNodes,
    /// Characters evaluated during a torsion-point scan.
    ScanPoints,
    /// Candidate assignments explored during sub-arrangement matching.
    MatchNodes,
}

impl std::fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BudgetKind::PartitionNodes => write!(f, "partition enumeration nodes"),
            BudgetKind::ScanPoints => write!(f, "scan points"),
            BudgetKind::MatchNodes => write!(f, "sub-arrangement match nodes"),
        }
    }
}

/// Errors produced by exact-arithmetic arrangement computations.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data (forms, labels, characters, cosets, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Two objects that must share a context (variable count, cyclotomic
    /// order, ambient dimension) do not.
    #[error("mismatched contexts: {0}")]
    Mismatch(String),

    /// A projection direction that violates a genericity precondition.
    /// The suggested replacement avoids the observed degeneracy.
    #[error("direction is not generic: {reason}; try direction ({sx}, {sy})")]
    NonGenericDirection {
        /// What degeneracy was observed.
        reason: String,
        /// First coordinate of a suggested replacement covector.
        sx: String,
        /// Second coordinate of a suggested replacement covector.
        sy: String,
    },

    /// The arrangement is not linearly fibered with respect to the requested
    /// direction (a vertex misses every fiber line, or a fiber contains none).
    #[error("not linearly fibered: {0}")]
    NotFibered(String),

    /// A character on a central arrangement fails the product condition
    /// `t_1 ... t_n = 1` and therefore corresponds to no local system on the
    /// decone; depth is undefined for it.
    #[error("product condition violated: the coordinates multiply to the nontrivial rotation {product} (expected 1)")]
    ProductCondition {
        /// Rotation number of the product of all coordinates.
        product: String,
    },

    /// A configured budget was exceeded; the computation was abandoned rather
    /// than silently truncated.
    #[error("budget exceeded: more than {limit} {kind}")]
    BudgetExceeded {
        /// Which budget.
        kind: BudgetKind,
        /// The configured limit that was hit.
        limit: u64,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for [`Error::Invalid`].
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Shorthand for [`Error::Mismatch`].
    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }
}
