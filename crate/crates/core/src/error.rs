use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("arrows in both directions between {first} and {second}")]
    DuplicateOppositeArrows { first: usize, second: usize },
    #[error("arrow {from} -> {to} joins two frozen vertices")]
    FrozenFrozenArrow { from: usize, to: usize },
    #[error("loop at vertex {vertex}")]
    LoopArrow { vertex: usize },
    #[error("vertex index {index} out of range for a quiver with {size} vertices")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("arrow {from} -> {to} has multiplicity zero")]
    ZeroMultiplicity { from: usize, to: usize },
    #[error("exchange matrix has {actual} entries, expected {expected}")]
    MatrixShape { expected: usize, actual: usize },
    #[error("exchange matrix is not skew-symmetric at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("quiver already has {n_frozen} frozen vertices")]
    AlreadyIced { n_frozen: usize },
    #[error("vertex {vertex} is frozen and cannot be mutated")]
    FrozenMutation { vertex: usize },
    #[error("integer overflow in exchange matrix")]
    IntegerOverflow,
    #[error("vertex {vertex} has frozen arrows in both directions")]
    MixedSigns { vertex: usize },
    #[error("vertex {vertex} has no arrows to or from frozen vertices")]
    NoFrozenArrows { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("genus {n} is not supported (need n >= 3)")]
    UnsupportedGenus { n: usize },
    #[error("block {block} out of range 1..={n}")]
    BlockOutOfRange { block: usize, n: usize },
    #[error("cannot parse vertex label {0:?}")]
    BadLabel(String),
    #[error("mutation sequence must not be empty")]
    EmptySequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("document violates quiver invariants: {0}")]
    InvariantViolation(#[from] QuiverError),
    #[error("expected {expected} labels, found {actual}")]
    LabelCount { expected: usize, actual: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// `step` is 1-based.
    #[error("vertex {vertex} is not green at step {step}")]
    NotGreenAtStep { step: usize, vertex: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("search budget of {budget} states exhausted before completion")]
    BudgetExceeded {
        budget: usize,
        partial: Box<crate::search::SearchReport>,
    },
    #[error("search bounds must be positive")]
    InvalidBounds,
}
