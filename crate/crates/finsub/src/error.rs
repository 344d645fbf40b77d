use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("part {index} is 1 and cannot be decremented")]
    PartTooSmall { index: usize },

    /// The two boundary matrices handed to `homology_at` do not compose to
    /// zero; this signals a boundary-construction bug upstream.
    #[error("boundary maps do not compose to zero")]
    CompositionNotZero,

    #[error("mismatched context: {0}")]
    MismatchedContext(String),

    #[error("monomial is not an admissible basis element: {0}")]
    InadmissibleMonomial(String),

    #[error("cell product outside the supported fragment: {0}")]
    UnsupportedCell(String),

    #[error("resource ceiling exceeded: {candidates} candidates (ceiling {ceiling})")]
    ResourceBound { candidates: u64, ceiling: u64 },

    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
}
